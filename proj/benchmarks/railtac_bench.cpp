#include <benchmark/benchmark.h>

#include "railtac/evaluation.hpp"
#include "railtac/network.hpp"
#include "railtac/optimizer.hpp"
#include "railtac/simulator.hpp"

namespace {

using namespace railtac;

Network corridor_network(std::int64_t tracks) {
  Network net;
  net.nodes = {Node{"o", NodeKind::centroid, "ES", ""},
               Node{"n1", NodeKind::regular, "ES", ""},
               Node{"n2", NodeKind::regular, "ES", ""},
               Node{"n3", NodeKind::regular, "FR", ""},
               Node{"d", NodeKind::centroid, "FR", ""}};
  net.profiles.push_back(passenger_priority_profile("residual"));
  net.arcs = {Arc{"c_in", "o", "n1", ArcKind::connector, 0.0, 0.0, 1, ""},
              Arc{"t1", "n1", "n2", ArcKind::regular, 260.0, 2.6, tracks, "residual"},
              Arc{"t2", "n2", "n3", ArcKind::regular, 270.0, 2.7, tracks, "residual"},
              Arc{"c_out", "n3", "d", ArcKind::connector, 0.0, 0.0, 1, ""}};
  net.od_pairs = {OdRef{"w1", "o", "d"}};
  Path path;
  path.id = "r1";
  path.od = "w1";
  path.arcs = {"c_in", "t1", "t2", "c_out"};
  path.reference_speed_kmh = 53.0;
  net.paths = {path};
  net.finalize();
  return net;
}

DemandModel corridor_demand(double tons_per_h, double t_max) {
  DemandModel demand;
  demand.cost = CostParams{2.23, 0.045, 53.0, 0.4543};
  demand.logit.beta_rail = -149.8372;
  demand.logit.beta_road = -13.5454;
  demand.logit.alpha_by_tag = {{"ES", 0.552}, {"FR", 0.4589}};
  ODPair od;
  od.id = "w1";
  od.origin = "o";
  od.destination = "d";
  od.demand_profile = StepFunction({0.0}, {tons_per_h}, t_max);
  od.road_cost_per_tkm = 0.4543;
  od.origin_alpha_tag = "ES";
  od.dest_alpha_tag = "FR";
  od.eta_distance_km = 530.0;
  demand.od_pairs.push_back(std::move(od));
  return demand;
}

void BM_SimulateYear(benchmark::State& state) {
  const auto demand_rate = static_cast<double>(state.range(0));
  const Network net = corridor_network(1);
  const DemandModel demand = corridor_demand(demand_rate, 8760.0);
  TacScheme scheme;
  scheme.variant = Proportional{0.13};
  const SimConfig config{8760.0, 1.0, 1.0 / 1600.0, false};
  std::uint64_t packets = 0;
  for (auto _ : state) {
    const SimResult result = run(net, demand, scheme, config);
    packets = result.packets_created;
    benchmark::DoNotOptimize(result.clock_end_h);
  }
  state.counters["trains"] = static_cast<double>(packets);
}
BENCHMARK(BM_SimulateYear)->Arg(400)->Arg(4000)->Arg(40000);

void BM_ObjectiveEvaluation(benchmark::State& state) {
  const Network net = corridor_network(1);
  const DemandModel demand = corridor_demand(4000.0, 8760.0);
  TacScheme scheme;
  scheme.variant = Proportional{0.13};
  const SimConfig config{8760.0, 1.0, 1.0 / 1600.0, false};
  const Policy policy{"policy1", 149.7, 23.0, 54.21};
  for (auto _ : state) {
    const SimResult result = run(net, demand, scheme, config);
    const ObjectiveBreakdown ob = objective(result, scheme, policy, net,
                                            demand.od_pairs, demand.cost, config);
    benchmark::DoNotOptimize(ob.z_eur);
  }
}
BENCHMARK(BM_ObjectiveEvaluation);

void BM_PatternSearchQuadratic(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  BoundedProblem problem;
  problem.lower.assign(dim, 0.0);
  problem.upper.assign(dim, 0.25);
  problem.objective = [](std::span<const double> x) {
    double z = 0.0;
    for (double v : x) z -= (v - 0.1) * (v - 0.1);
    return EvalOutcome{z, 0.0, 0.0};
  };
  PatternSearchConfig config;
  config.initial_point.assign(dim, 0.125);
  config.initial_mesh = 0.05;
  config.mesh_tolerance = 1e-5;
  config.max_evaluations = 100000;
  for (auto _ : state) {
    const auto result = pattern_search(problem, config);
    benchmark::DoNotOptimize(result.best_z);
  }
}
BENCHMARK(BM_PatternSearchQuadratic)->Arg(1)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
