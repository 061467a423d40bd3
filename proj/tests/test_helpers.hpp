#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "railtac/evaluation.hpp"
#include "railtac/network.hpp"
#include "railtac/scenario.hpp"
#include "railtac/simulator.hpp"

namespace railtac::test {

inline CostParams corridor_cost() {
  return CostParams{2.23, 0.045, 53.0, 0.4543};
}

inline LogitParams corridor_logit() {
  LogitParams logit;
  logit.beta_rail = -149.8372;
  logit.beta_road = -13.5454;
  logit.alpha_by_tag = {{"ES", 0.552},  {"FR", 0.4589}, {"IT", 0.1356},
                        {"SL", 0.3512}, {"HK", 0.222},  {"HU", 0.0}};
  return logit;
}

inline Policy policy1() { return Policy{"policy1", 149.7, 23.0, 54.21}; }
inline Policy policy2() { return Policy{"policy2", 54.0, 23.0, 54.21}; }
inline Policy policy3() { return Policy{"policy3", 149.7, 23.0, 0.0}; }

struct LineSpec {
  double run_time_h = 5.3;
  double length_km = 530.0;
  std::int64_t tracks = 1;
  std::string profile;  // empty = flat capacity
  double reference_speed_kmh = 53.0;
};

/// Single-track corridor: centroid -> terminal -> terminal -> centroid.
inline Network make_line_network(const LineSpec& spec = {}) {
  Network net;
  net.nodes = {Node{"o", NodeKind::centroid, "ES", ""},
               Node{"n1", NodeKind::regular, "ES", ""},
               Node{"n2", NodeKind::regular, "FR", ""},
               Node{"d", NodeKind::centroid, "FR", ""}};
  if (!spec.profile.empty()) {
    net.profiles.push_back(passenger_priority_profile(spec.profile));
  }
  net.arcs = {Arc{"c_in", "o", "n1", ArcKind::connector, 0.0, 0.0, 1, ""},
              Arc{"track", "n1", "n2", ArcKind::regular, spec.length_km,
                  spec.run_time_h, spec.tracks, spec.profile},
              Arc{"c_out", "n2", "d", ArcKind::connector, 0.0, 0.0, 1, ""}};
  net.od_pairs = {OdRef{"w1", "o", "d"}};
  Path path;
  path.id = "r1";
  path.od = "w1";
  path.arcs = {"c_in", "track", "c_out"};
  path.reference_speed_kmh = spec.reference_speed_kmh;
  net.paths = {path};
  net.finalize();
  return net;
}

inline ODPair make_constant_od(std::string id, double tons_per_h, double t_max,
                               double road_cost = 0.4543, double eta_km = 530.0) {
  ODPair od;
  od.id = std::move(id);
  od.origin = "o";
  od.destination = "d";
  od.demand_profile = StepFunction({0.0}, {tons_per_h}, t_max);
  od.road_cost_per_tkm = road_cost;
  od.origin_alpha_tag = "ES";
  od.dest_alpha_tag = "FR";
  od.eta_distance_km = eta_km;
  return od;
}

inline Scenario make_tiny_scenario(double t_max = 240.0, double tons_per_h = 1200.0,
                                   const std::string& profile = "residual") {
  Scenario sc;
  sc.name = "tiny";
  sc.network = make_line_network(LineSpec{5.3, 530.0, 1, profile, 53.0});
  sc.demand.cost = corridor_cost();
  sc.demand.logit = corridor_logit();
  sc.demand.od_pairs = {make_constant_od("w1", tons_per_h, t_max)};
  sc.sim = SimConfig{t_max, 1.0, 1.0 / 1600.0, false};
  sc.prototype_train_tons = 1600.0;
  sc.policies = {policy1(), policy2(), policy3()};
  return sc;
}

struct SmallScenario {
  Network net;
  DemandModel demand;
  TacScheme scheme;
  SimConfig config;
};

/// Randomized chain corridor with up to 6 nodes and 4 OD pairs; deterministic
/// for a given seed.
inline SmallScenario make_random_scenario(unsigned seed) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  SmallScenario sc;
  Network& net = sc.net;
  const int regulars = pick(2, 3);
  net.profiles.push_back(passenger_priority_profile("residual"));
  for (int i = 0; i < regulars; ++i) {
    net.nodes.push_back(Node{"n" + std::to_string(i), NodeKind::regular,
                             i == 0 ? "ES" : "FR", ""});
  }
  for (int i = 0; i + 1 < regulars; ++i) {
    Arc arc;
    arc.id = "t" + std::to_string(i);
    arc.from = "n" + std::to_string(i);
    arc.to = "n" + std::to_string(i + 1);
    arc.kind = ArcKind::regular;
    arc.length_km = uniform(50.0, 400.0);
    arc.run_time_h = uniform(0.5, 4.0);
    arc.tracks_per_direction = pick(1, 2);
    arc.profile = pick(0, 1) ? "residual" : "";
    net.arcs.push_back(arc);
  }
  for (int i = 0; i < regulars; ++i) {
    const std::string c = "c" + std::to_string(i);
    net.nodes.push_back(Node{c, NodeKind::centroid, i == 0 ? "ES" : "FR", ""});
    net.arcs.push_back(Arc{"in_" + c, c, "n" + std::to_string(i),
                           ArcKind::connector, 0.0, 0.0, 1, ""});
    net.arcs.push_back(Arc{"out_" + c, "n" + std::to_string(i), c,
                           ArcKind::connector, 0.0, 0.0, 1, ""});
  }

  sc.config.t_max_h = uniform(48.0, 240.0);
  sc.config.delta_f_trains = 1.0;
  sc.config.kappa_trains_per_ton = 1.0 / 1600.0;
  sc.config.record_trace = true;
  sc.demand.cost = corridor_cost();
  sc.demand.logit = corridor_logit();

  const int n_ods = pick(1, 4);
  for (int k = 0; k < n_ods; ++k) {
    const int from = pick(0, regulars - 2);
    const int to = pick(from + 1, regulars - 1);
    ODPair od;
    od.id = "w" + std::to_string(k);
    od.origin = "c" + std::to_string(from);
    od.destination = "c" + std::to_string(to);
    const double rate = uniform(200.0, 3000.0);
    if (pick(0, 1)) {
      od.demand_profile = StepFunction({0.0}, {rate}, sc.config.t_max_h);
    } else {
      // quiet stretch, then traffic
      const double quiet = uniform(1.0, sc.config.t_max_h / 3.0);
      od.demand_profile = StepFunction({0.0, quiet}, {0.0, rate}, sc.config.t_max_h);
    }
    od.road_cost_per_tkm = uniform(0.3, 0.5);
    od.origin_alpha_tag = "ES";
    od.dest_alpha_tag = "FR";
    net.od_pairs.push_back(OdRef{od.id, od.origin, od.destination});
    sc.demand.od_pairs.push_back(std::move(od));
  }
  net.finalize();
  for (const OdRef& od : net.od_pairs) {
    if (net.paths_for_od(od.id).empty()) {
      Path path = min_cost_path(net, od);
      path.reference_speed_kmh = sc.demand.cost.reference_speed_kmh;
      net.paths.push_back(std::move(path));
    }
  }
  net.finalize();
  for (ODPair& od : sc.demand.od_pairs) {
    od.eta_distance_km = net.paths_for_od(od.id).front()->length_km;
  }
  sc.scheme.variant = Proportional{uniform(0.0, 0.25)};
  return sc;
}

/// Largest per-OD conservation violation |rail + road - total|, in tons.
inline double conservation_gap(const SimResult& result) {
  double worst = 0.0;
  for (const OdResult& od : result.ods) {
    worst = std::max(worst, std::abs(od.rail_tons + od.road_tons - od.total_tons));
  }
  return worst;
}

/// True when every window between two entries respects the integrated
/// capacity bound ceil(integral k / delta_f) + 1.
inline bool capacity_compliant(const Network& net, const SimResult& result,
                               double delta_f) {
  for (const ArcResult& ar : result.arcs) {
    const Arc* arc = net.find_arc(ar.arc_id);
    const auto& entries = ar.entry_times_h;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        const auto in_window = static_cast<double>(j - i);  // entries in [t_i, t_j)
        const double allowed =
            std::ceil(net.capacity_integral(*arc, entries[i], entries[j]) / delta_f) + 1.0;
        if (in_window > allowed) return false;
      }
    }
  }
  return true;
}

}  // namespace railtac::test
