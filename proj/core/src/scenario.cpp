#include "railtac/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "railtac/io.hpp"

namespace railtac {

using nlohmann::json;

namespace {

struct Reader {
  const json& j;
  std::string ctx;
  std::vector<std::string>& issues;

  bool has(const char* key) const { return j.contains(key); }

  const json* object(const char* key) const {
    if (!j.contains(key) || !j[key].is_object()) {
      issues.push_back(ctx + ": missing object '" + key + "'");
      return nullptr;
    }
    return &j[key];
  }

  const json* array(const char* key, bool required = true) const {
    if (!j.contains(key)) {
      if (required) issues.push_back(ctx + ": missing array '" + key + "'");
      return nullptr;
    }
    if (!j[key].is_array()) {
      issues.push_back(ctx + ": '" + key + "' must be an array");
      return nullptr;
    }
    return &j[key];
  }

  double number(const char* key) const {
    if (!j.contains(key) || !j[key].is_number()) {
      issues.push_back(ctx + ": missing number '" + key + "'");
      return 0.0;
    }
    return j[key].get<double>();
  }

  double number_or(const char* key, double fallback) const {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) {
      issues.push_back(ctx + ": '" + key + "' must be a number");
      return fallback;
    }
    return j[key].get<double>();
  }

  std::string string(const char* key) const {
    if (!j.contains(key) || !j[key].is_string()) {
      issues.push_back(ctx + ": missing string '" + key + "'");
      return {};
    }
    return j[key].get<std::string>();
  }

  std::string string_or(const char* key, std::string fallback) const {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) {
      issues.push_back(ctx + ": '" + key + "' must be a string");
      return fallback;
    }
    return j[key].get<std::string>();
  }
};

void parse_network(const json& jnet, Network& net,
                   std::vector<std::string>& issues) {
  Reader net_reader{jnet, "network", issues};
  if (const json* jprofiles = net_reader.array("capacity_profiles", false)) {
    for (const json& jp : *jprofiles) {
      Reader r{jp, "profile", issues};
      CapacityProfile prof;
      prof.name = r.string("name");
      if (const json* jbands = Reader{jp, "profile '" + prof.name + "'", issues}
                                   .array("bands")) {
        for (const json& jb : *jbands) {
          Reader rb{jb, "profile '" + prof.name + "' band", issues};
          prof.bands.push_back(ProfileBand{rb.number("start_h"), rb.number("end_h"),
                                           rb.number("fraction")});
        }
      }
      net.profiles.push_back(std::move(prof));
    }
  }
  if (const json* jnodes = net_reader.array("nodes")) {
    for (const json& jn : *jnodes) {
      Reader r{jn, "node", issues};
      Node node;
      node.id = r.string("id");
      const std::string kind = r.string_or("kind", "regular");
      if (kind == "centroid") {
        node.kind = NodeKind::centroid;
      } else if (kind == "regular") {
        node.kind = NodeKind::regular;
      } else {
        issues.push_back("node '" + node.id + "': unknown kind '" + kind + "'");
      }
      node.country_tag = r.string_or("country_tag", "");
      node.name = r.string_or("name", "");
      net.nodes.push_back(std::move(node));
    }
  }
  if (const json* jarcs = net_reader.array("arcs")) {
    for (const json& ja : *jarcs) {
      Reader r{ja, "arc", issues};
      Arc arc;
      arc.id = r.string("id");
      Reader ra{ja, "arc '" + arc.id + "'", issues};
      arc.from = ra.string("from");
      arc.to = ra.string("to");
      const std::string kind = ra.string_or("kind", "regular");
      if (kind == "connector") {
        arc.kind = ArcKind::connector;
      } else if (kind == "regular") {
        arc.kind = ArcKind::regular;
      } else {
        issues.push_back("arc '" + arc.id + "': unknown kind '" + kind + "'");
      }
      if (arc.kind == ArcKind::regular) {
        arc.length_km = ra.number("length_km");
        arc.run_time_h = ra.number("run_time_h");
        arc.tracks_per_direction =
            static_cast<std::int64_t>(ra.number_or("tracks_per_direction", 1.0));
        arc.profile = ra.string_or("profile", "");
      } else {
        arc.length_km = ra.number_or("length_km", 0.0);
        arc.run_time_h = ra.number_or("run_time_h", 0.0);
      }
      net.arcs.push_back(std::move(arc));
    }
  }
  if (const json* jpaths = net_reader.array("paths", false)) {
    for (const json& jp : *jpaths) {
      Reader r{jp, "path", issues};
      Path path;
      path.id = r.string("id");
      Reader rp{jp, "path '" + path.id + "'", issues};
      path.od = rp.string("od");
      if (const json* jarcs = rp.array("arcs")) {
        for (const json& ja : *jarcs) {
          if (ja.is_string()) {
            path.arcs.push_back(ja.get<std::string>());
          } else {
            issues.push_back("path '" + path.id + "': arc entries must be strings");
          }
        }
      }
      path.reference_speed_kmh = rp.number_or("reference_speed_kmh", 0.0);
      net.paths.push_back(std::move(path));
    }
  }
}

void parse_demand(const json& jdemand, double t_max, const Network& net,
                  DemandModel& demand, std::vector<std::string>& issues) {
  Reader demand_reader{jdemand, "demand", issues};
  const json* jods = demand_reader.array("od_pairs");
  if (!jods) return;
  for (const json& jo : *jods) {
    Reader r{jo, "od_pair", issues};
    ODPair od;
    od.id = r.string("id");
    Reader ro{jo, "od_pair '" + od.id + "'", issues};
    od.origin = ro.string("origin");
    od.destination = ro.string("destination");
    od.road_cost_per_tkm =
        ro.number_or("road_cost_per_tkm", demand.cost.road_cost_default);
    od.eta_distance_km = ro.number_or("eta_distance_km", 0.0);
    const Node* origin = net.find_node(od.origin);
    const Node* destination = net.find_node(od.destination);
    od.origin_alpha_tag =
        ro.string_or("origin_alpha_tag", origin ? origin->country_tag : "");
    od.dest_alpha_tag =
        ro.string_or("dest_alpha_tag", destination ? destination->country_tag : "");
    if (const json* jdem = ro.array("demand")) {
      std::vector<double> starts;
      std::vector<double> values;
      for (const json& jb : *jdem) {
        Reader rb{jb, "od_pair '" + od.id + "' demand", issues};
        starts.push_back(rb.number("start_h"));
        values.push_back(rb.number("tons_per_h"));
      }
      if (starts.empty() || starts.front() != 0.0) {
        issues.push_back("od_pair '" + od.id + "': demand must start at hour 0");
      } else if (!std::is_sorted(starts.begin(), starts.end()) ||
                 starts.back() >= t_max) {
        issues.push_back("od_pair '" + od.id +
                         "': demand breakpoints must increase and stay below t_max");
      } else if (std::any_of(values.begin(), values.end(),
                             [](double v) { return v < 0.0; })) {
        issues.push_back("od_pair '" + od.id + "': negative demand intensity");
      } else {
        od.demand_profile = StepFunction(std::move(starts), std::move(values), t_max);
      }
    }
    demand.od_pairs.push_back(std::move(od));
  }
}

}  // namespace

const Policy& Scenario::policy(const std::string& name) const {
  for (const Policy& p : policies) {
    if (p.name == name) return p;
  }
  throw ScenarioError("scenario has no policy named '" + name + "'");
}

Scenario load_scenario(const std::filesystem::path& file) {
  json root;
  try {
    root = json::parse(read_file(file));
  } catch (const json::parse_error& e) {
    throw ScenarioError("cannot parse '" + file.string() + "': " + e.what());
  }
  std::vector<std::string> issues;
  Scenario sc;
  Reader top{root, "scenario", issues};
  sc.name = top.string_or("name", file.stem().string());

  // Parameters come first: demand profiles and path defaults depend on them.
  if (const json* jparams = top.object("params")) {
    Reader rparams{*jparams, "params", issues};
    if (const json* jcost = rparams.object("cost")) {
      Reader rc{*jcost, "params.cost", issues};
      sc.demand.cost.delay_cost_per_t_h = rc.number("delay_cost_per_t_h");
      sc.demand.cost.rail_fixed_cost_per_tkm = rc.number("rail_fixed_cost_per_tkm");
      sc.demand.cost.reference_speed_kmh = rc.number("reference_speed_kmh");
      sc.demand.cost.road_cost_default = rc.number("road_cost_default");
    }
    if (const json* jlogit = rparams.object("logit")) {
      Reader rl{*jlogit, "params.logit", issues};
      sc.demand.logit.beta_rail = rl.number("beta_rail");
      sc.demand.logit.beta_road = rl.number("beta_road");
      if (jlogit->contains("alpha_by_tag")) {
        if (!(*jlogit)["alpha_by_tag"].is_object()) {
          issues.push_back("params.logit: 'alpha_by_tag' must be an object");
        } else {
          for (const auto& [tag, value] : (*jlogit)["alpha_by_tag"].items()) {
            if (!value.is_number()) {
              issues.push_back("params.logit.alpha_by_tag: '" + tag + "' must be a number");
            } else {
              sc.demand.logit.alpha_by_tag[tag] = value.get<double>();
            }
          }
        }
      }
    }
    if (const json* jsim = rparams.object("sim")) {
      Reader rs{*jsim, "params.sim", issues};
      sc.sim.t_max_h = rs.number("t_max_h");
      sc.sim.delta_f_trains = rs.number_or("delta_f_trains", 1.0);
      sc.sim.kappa_trains_per_ton = rs.number("kappa_trains_per_ton");
      sc.prototype_train_tons = rs.number_or("prototype_train_tons", 0.0);
    }
  }
  if (sc.sim.t_max_h <= 0.0) issues.push_back("params.sim: t_max_h must be positive");
  if (sc.sim.delta_f_trains <= 0.0) issues.push_back("params.sim: delta_f_trains must be positive");
  if (sc.sim.kappa_trains_per_ton <= 0.0) {
    issues.push_back("params.sim: kappa_trains_per_ton must be positive");
  }
  if (sc.prototype_train_tons > 0.0 && sc.sim.kappa_trains_per_ton > 0.0 &&
      std::abs(sc.sim.kappa_trains_per_ton * sc.prototype_train_tons - 1.0) > 1e-9) {
    issues.push_back("params.sim: kappa_trains_per_ton and prototype_train_tons are inconsistent");
  }
  if (sc.demand.cost.delay_cost_per_t_h <= 0.0 ||
      sc.demand.cost.rail_fixed_cost_per_tkm <= 0.0 ||
      sc.demand.cost.reference_speed_kmh <= 0.0 ||
      sc.demand.cost.road_cost_default <= 0.0) {
    issues.push_back("params.cost: all cost parameters must be positive");
  }

  if (const json* jnet = top.object("network")) {
    parse_network(*jnet, sc.network, issues);
  }
  sc.network.finalize();  // node lookups drive the demand defaults below
  if (const json* jdemand = top.object("demand")) {
    parse_demand(*jdemand, sc.sim.t_max_h, sc.network, sc.demand, issues);
  }
  for (const ODPair& od : sc.demand.od_pairs) {
    sc.network.od_pairs.push_back(OdRef{od.id, od.origin, od.destination});
  }

  if (const json* jpolicies = top.array("policies", false)) {
    std::set<std::string> names;
    for (const json& jp : *jpolicies) {
      Reader r{jp, "policy", issues};
      Policy policy;
      policy.name = r.string("name");
      Reader rp{jp, "policy '" + policy.name + "'", issues};
      policy.truck_emission_g_per_tkm = rp.number("truck_emission_g_per_tkm");
      policy.train_emission_g_per_tkm = rp.number("train_emission_g_per_tkm");
      policy.credit_eur_per_tco2e = rp.number("credit_eur_per_tco2e");
      if (!names.insert(policy.name).second) {
        issues.push_back("policy '" + policy.name + "': duplicate name");
      }
      sc.policies.push_back(std::move(policy));
    }
  }

  if (!issues.empty()) {
    std::string what = "scenario '" + file.string() + "' is invalid:";
    for (const std::string& issue : issues) what += "\n  - " + issue;
    throw ScenarioError(what, std::move(issues));
  }

  // Routes left out of the file fall back to the minimum-cost path per OD.
  sc.network.finalize();
  for (const OdRef& od : sc.network.od_pairs) {
    if (!sc.network.paths_for_od(od.id).empty()) continue;
    try {
      sc.network.paths.push_back(min_cost_path(sc.network, od));
    } catch (const DisconnectedOd& e) {
      issues.push_back(e.what());
    }
  }
  for (Path& path : sc.network.paths) {
    if (path.reference_speed_kmh <= 0.0) {
      path.reference_speed_kmh = sc.demand.cost.reference_speed_kmh;
    }
  }
  sc.network.finalize();
  for (ODPair& od : sc.demand.od_pairs) {
    if (od.eta_distance_km > 0.0) continue;
    // Default externality distance: the rail route length.
    const auto paths = sc.network.paths_for_od(od.id);
    if (!paths.empty()) od.eta_distance_km = paths.front()->length_km;
    if (od.eta_distance_km <= 0.0) {
      issues.push_back("od_pair '" + od.id + "': no externality distance available");
    }
  }
  for (const Violation& v : validate_network(sc.network)) {
    issues.push_back(v.entity + " '" + v.id + "': " + v.message);
  }
  if (!issues.empty()) {
    std::string what = "scenario '" + file.string() + "' failed validation:";
    for (const std::string& issue : issues) what += "\n  - " + issue;
    throw ScenarioError(what, std::move(issues));
  }
  return sc;
}

namespace {

json scheme_json(const TacScheme& scheme) {
  json out;
  out["p_min"] = scheme.p_min;
  out["p_max"] = scheme.p_max;
  if (const auto* prop = std::get_if<Proportional>(&scheme.variant)) {
    out["kind"] = "proportional";
    out["p"] = prop->p;
  } else if (const auto* pb = std::get_if<PathBased>(&scheme.variant)) {
    out["kind"] = "path_based";
    json values = json::object();
    for (const auto& [path_id, p] : pb->p_by_path) values[path_id] = p;
    out["p_by_path"] = std::move(values);
  } else {
    const auto& tv = std::get<TimeVarying>(scheme.variant);
    out["kind"] = "time_varying";
    out["grid_h"] = tv.grid_h;
    json values = json::object();
    for (const auto& [path_id, row] : tv.p_by_path) values[path_id] = row;
    out["p_by_path"] = std::move(values);
  }
  return out;
}

}  // namespace

std::string scheme_to_json(const TacScheme& scheme) {
  return scheme_json(scheme).dump(2) + "\n";
}

TacScheme load_scheme(const std::filesystem::path& file) {
  json root;
  try {
    root = json::parse(read_file(file));
  } catch (const json::parse_error& e) {
    throw ScenarioError("cannot parse '" + file.string() + "': " + e.what());
  }
  std::vector<std::string> issues;
  Reader r{root, "scheme", issues};
  TacScheme scheme;
  scheme.p_min = r.number_or("p_min", 0.0);
  scheme.p_max = r.number_or("p_max", 0.25);
  const std::string kind = r.string("kind");
  if (kind == "proportional") {
    scheme.variant = Proportional{r.number("p")};
  } else if (kind == "path_based") {
    PathBased pb;
    if (root.contains("p_by_path") && root["p_by_path"].is_object()) {
      for (const auto& [path_id, value] : root["p_by_path"].items()) {
        if (!value.is_number()) {
          issues.push_back("scheme: p for path '" + path_id + "' must be a number");
        } else {
          pb.p_by_path.emplace_back(path_id, value.get<double>());
        }
      }
    } else {
      issues.push_back("scheme: missing object 'p_by_path'");
    }
    std::sort(pb.p_by_path.begin(), pb.p_by_path.end());
    scheme.variant = std::move(pb);
  } else if (kind == "time_varying") {
    TimeVarying tv;
    if (root.contains("grid_h") && root["grid_h"].is_array()) {
      for (const json& g : root["grid_h"]) tv.grid_h.push_back(g.get<double>());
    } else {
      issues.push_back("scheme: missing array 'grid_h'");
    }
    if (root.contains("p_by_path") && root["p_by_path"].is_object()) {
      for (const auto& [path_id, row] : root["p_by_path"].items()) {
        if (!row.is_array()) {
          issues.push_back("scheme: values for path '" + path_id + "' must be an array");
          continue;
        }
        std::vector<double> values;
        for (const json& v : row) values.push_back(v.get<double>());
        tv.p_by_path.emplace_back(path_id, std::move(values));
      }
    } else {
      issues.push_back("scheme: missing object 'p_by_path'");
    }
    std::sort(tv.p_by_path.begin(), tv.p_by_path.end());
    scheme.variant = std::move(tv);
  } else if (!kind.empty()) {
    issues.push_back("scheme: unknown kind '" + kind + "'");
  }
  if (!issues.empty()) {
    std::string what = "scheme '" + file.string() + "' is invalid:";
    for (const std::string& issue : issues) what += "\n  - " + issue;
    throw ScenarioError(what, std::move(issues));
  }
  try {
    scheme.validate();
  } catch (const std::exception& e) {
    throw ScenarioError("scheme '" + file.string() + "' is invalid: " + e.what());
  }
  return scheme;
}

void save_scheme(const TacScheme& scheme, const std::filesystem::path& file) {
  atomic_write(file, scheme_to_json(scheme));
}

}  // namespace railtac
