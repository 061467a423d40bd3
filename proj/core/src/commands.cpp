#include "railtac/commands.hpp"

#include <cstdio>
#include <variant>

#include <json.hpp>

#include "railtac/appraisal.hpp"
#include "railtac/io.hpp"

namespace railtac {

using nlohmann::json;

namespace {

json scheme_as_json(const TacScheme& scheme) {
  return json::parse(scheme_to_json(scheme));
}

json kpis_as_json(const Kpis& k) {
  return json{{"tac_revenue_eur", k.tac_revenue_eur},
              {"co2e_rights_value_eur", k.co2e_rights_value_eur},
              {"transport_cost_eur", k.transport_cost_eur},
              {"delay_cost_saving_eur", k.delay_cost_saving_eur},
              {"avg_speed_kmh", k.avg_speed_kmh},
              {"rail_mtons", k.rail_mtons},
              {"rail_share_pct", k.rail_share_pct},
              {"rail_tons", k.rail_tons},
              {"road_tons", k.road_tons},
              {"total_tons", k.total_tons},
              {"rail_tonkm", k.rail_tonkm},
              {"road_tonkm", k.road_tonkm},
              {"completed_packets", k.completed_packets},
              {"incomplete_packets", k.incomplete_packets}};
}

std::string kpis_csv(const Kpis& k) {
  CsvWriter csv({"tac_revenue_eur", "co2e_rights_value_eur", "transport_cost_eur",
                 "delay_cost_saving_eur", "avg_speed_kmh", "rail_mtons",
                 "rail_share_pct"});
  csv.add_row({format_double(k.tac_revenue_eur), format_double(k.co2e_rights_value_eur),
               format_double(k.transport_cost_eur),
               format_double(k.delay_cost_saving_eur), format_double(k.avg_speed_kmh),
               format_double(k.rail_mtons), format_double(k.rail_share_pct)});
  return csv.str();
}

std::string trace_csv(const SimResult& result) {
  CsvWriter csv({"event_id", "packet_id", "state", "arc_id", "fire_time_h"});
  for (const TraceRow& row : result.trace) {
    csv.add_row({std::to_string(row.event_id), std::to_string(row.packet_id),
                 row.state == PacketState::state0 ? "STATE0" : "STATE1", row.arc_id,
                 format_double(row.fire_time_h)});
  }
  return csv.str();
}

std::string od_summary_csv(const SimResult& result) {
  CsvWriter csv({"od", "rail_tons", "road_tons", "total_tons", "rail_share_pct"});
  for (const OdResult& od : result.ods) {
    const double share = od.total_tons > 0.0 ? 100.0 * od.rail_tons / od.total_tons : 0.0;
    csv.add_row({od.od_id, format_double(od.rail_tons), format_double(od.road_tons),
                 format_double(od.total_tons), format_double(share)});
  }
  return csv.str();
}

std::string path_revenue_csv(const ObjectiveBreakdown& ob) {
  CsvWriter csv({"path", "completed_packets", "revenue_eur", "priced_travel_time_h"});
  for (const PathRevenue& rev : ob.per_path) {
    csv.add_row({rev.path_id, std::to_string(rev.completed_packets),
                 format_double(rev.revenue_eur),
                 format_double(rev.total_travel_time_h)});
  }
  return csv.str();
}

std::string curve_csv(const std::vector<EvalRecord>& curve) {
  CsvWriter csv({"p", "revenue_eur", "externality_eur", "z_eur"});
  for (const EvalRecord& rec : curve) {
    csv.add_row({format_double(rec.point[0]), format_double(rec.outcome.revenue_eur),
                 format_double(rec.outcome.externality_eur),
                 format_double(rec.outcome.z)});
  }
  return csv.str();
}

void check_scheme_horizon(const TacScheme& scheme, double t_max) {
  if (const auto* tv = std::get_if<TimeVarying>(&scheme.variant)) {
    if (tv->grid_h.back() != t_max) {
      throw ScenarioError("time-varying scheme grid must end at the scenario horizon");
    }
  }
}

}  // namespace

void cmd_simulate(const SimulateOptions& opts) {
  const Scenario sc = load_scenario(opts.scenario_file);
  TacScheme scheme;  // zero charges unless a scheme file is given
  if (!opts.scheme_file.empty()) scheme = load_scheme(opts.scheme_file);
  check_scheme_horizon(scheme, sc.sim.t_max_h);
  const Policy& policy = sc.policy(opts.policy);

  SimConfig config = sc.sim;
  config.record_trace = opts.trace;
  const SimResult result = run(sc.network, sc.demand, scheme, config);
  const ObjectiveBreakdown ob =
      objective(result, scheme, policy, sc.network, sc.demand.od_pairs,
                sc.demand.cost, config, opts.basis);

  json out;
  out["scenario"] = sc.name;
  out["policy"] = policy.name;
  out["revenue_basis"] =
      opts.basis == RevenueBasis::realized_time ? "realized_time" : "estimated_time";
  out["scheme"] = scheme_as_json(scheme);
  out["objective"] = {{"revenue_eur", ob.revenue_eur},
                      {"externality_eur", ob.externality_eur},
                      {"z_eur", ob.z_eur}};
  out["kpis"] = kpis_as_json(ob.kpis);
  json per_path = json::object();
  for (const PathRevenue& rev : ob.per_path) per_path[rev.path_id] = rev.revenue_eur;
  out["per_path_revenue_eur"] = std::move(per_path);
  json ods = json::array();
  for (const OdResult& od : result.ods) {
    ods.push_back({{"od", od.od_id},
                   {"rail_tons", od.rail_tons},
                   {"road_tons", od.road_tons},
                   {"total_tons", od.total_tons}});
  }
  out["od_summary"] = std::move(ods);
  out["context"] = {
      {"cost",
       {{"delay_cost_per_t_h", sc.demand.cost.delay_cost_per_t_h},
        {"rail_fixed_cost_per_tkm", sc.demand.cost.rail_fixed_cost_per_tkm},
        {"reference_speed_kmh", sc.demand.cost.reference_speed_kmh},
        {"road_cost_default", sc.demand.cost.road_cost_default}}},
      {"sim",
       {{"t_max_h", sc.sim.t_max_h},
        {"delta_f_trains", sc.sim.delta_f_trains},
        {"kappa_trains_per_ton", sc.sim.kappa_trains_per_ton}}}};

  atomic_write(opts.out_dir / "kpis.json", out.dump(2) + "\n");
  atomic_write(opts.out_dir / "kpis.csv", kpis_csv(ob.kpis));
  atomic_write(opts.out_dir / "od_summary.csv", od_summary_csv(result));
  atomic_write(opts.out_dir / "path_revenue.csv", path_revenue_csv(ob));
  if (opts.trace) {
    atomic_write(opts.out_dir / "trace.csv", trace_csv(result));
  }
  std::printf("simulate: %s, policy %s: Z = %.2f eur (revenue %.2f, externality %.2f), "
              "rail share %.2f%%, %lld trains completed\n",
              sc.name.c_str(), policy.name.c_str(), ob.z_eur, ob.revenue_eur,
              ob.externality_eur, ob.kpis.rail_share_pct,
              static_cast<long long>(ob.kpis.completed_packets));
}

void cmd_sweep(const SweepOptions& opts) {
  const Scenario sc = load_scenario(opts.scenario_file);
  const Policy& policy = sc.policy(opts.policy);
  const VectorLayout layout = proportional_layout(opts.p_min, opts.p_max);
  const BoundedProblem problem = make_scheme_problem(sc, layout, policy, opts.basis);
  const GridScanResult result = grid_scan(problem, GridScanConfig{opts.steps});
  atomic_write(opts.out_dir / "sweep.csv", curve_csv(result.curve));
  std::printf("sweep: %zu points on [%g, %g], best p = %g with Z = %.2f eur\n",
              opts.steps, opts.p_min, opts.p_max, result.best_value, result.best_z);
}

void cmd_optimize(const OptimizeOptions& opts) {
  const Scenario sc = load_scenario(opts.scenario_file);
  const Policy& policy = sc.policy(opts.policy);
  SchemeSearchConfig config;
  if (opts.scheme_kind == "proportional") {
    config.kind = SchemeKind::proportional;
  } else if (opts.scheme_kind == "path-based") {
    config.kind = SchemeKind::path_based;
  } else {
    throw ScenarioError("unknown scheme kind '" + opts.scheme_kind + "'");
  }
  if (opts.algo == "pattern-search") {
    config.algo = SearchAlgo::pattern_search;
  } else if (opts.algo == "grid") {
    config.algo = SearchAlgo::grid;
  } else {
    throw ScenarioError("unknown algorithm '" + opts.algo + "'");
  }
  config.p_min = opts.p_min;
  config.p_max = opts.p_max;
  config.grid.steps = opts.grid_steps;
  config.pattern.max_evaluations = opts.max_evaluations;
  config.pattern.mesh_tolerance = opts.mesh_tolerance;
  config.pattern.parallel_poll = opts.parallel_poll;
  config.basis = opts.basis;

  const SchemeSearchReport report = optimize_scheme(sc, config, policy);

  json out;
  out["scenario"] = sc.name;
  out["policy"] = policy.name;
  out["scheme_kind"] = opts.scheme_kind;
  out["algo"] = opts.algo;
  out["best"] = {{"z_eur", report.best_z},
                 {"revenue_eur", report.best_outcome.revenue_eur},
                 {"externality_eur", report.best_outcome.externality_eur},
                 {"scheme", scheme_as_json(report.best_scheme)}};
  out["layout"] = {{"kind", opts.scheme_kind},
                   {"coordinates", report.layout.coordinate_names()},
                   {"p_min", report.layout.p_min},
                   {"p_max", report.layout.p_max}};
  json stages;
  stages["proportional"] = {{"steps", report.proportional_stage.curve.size()},
                            {"best_p", report.proportional_stage.best_value},
                            {"best_z_eur", report.proportional_stage.best_z}};
  if (report.pattern_stage) {
    stages["pattern_search"] = {{"evaluations", report.pattern_stage->evaluations},
                                {"iterations", report.pattern_stage->history.size() - 1},
                                {"converged", report.pattern_stage->converged},
                                {"best_z_eur", report.pattern_stage->best_z}};
  }
  out["stages"] = std::move(stages);
  out["total_evaluations"] = report.total_evaluations;

  atomic_write(opts.out_dir / "report.json", out.dump(2) + "\n");
  atomic_write(opts.out_dir / "best_scheme.json", scheme_to_json(report.best_scheme));
  atomic_write(opts.out_dir / "proportional_curve.csv",
               curve_csv(report.proportional_stage.curve));
  if (report.pattern_stage) {
    CsvWriter csv([&] {
      std::vector<std::string> header{"eval_index"};
      for (const std::string& name : report.layout.coordinate_names()) {
        header.push_back(name);
      }
      header.insert(header.end(), {"z_eur", "revenue_eur", "externality_eur"});
      return header;
    }());
    for (const EvalRecord& rec : report.pattern_stage->log) {
      std::vector<std::string> row{std::to_string(rec.index)};
      for (double v : rec.point) row.push_back(format_double(v));
      row.push_back(format_double(rec.outcome.z));
      row.push_back(format_double(rec.outcome.revenue_eur));
      row.push_back(format_double(rec.outcome.externality_eur));
      csv.add_row(row);
    }
    atomic_write(opts.out_dir / "search_log.csv", csv.str());
  }
  // Wall time stays on the console: result files must be byte-stable.
  std::printf("optimize: %s/%s on %s, policy %s: best Z = %.2f eur after %llu "
              "evaluations (%.2f s)\n",
              opts.scheme_kind.c_str(), opts.algo.c_str(), sc.name.c_str(),
              policy.name.c_str(), report.best_z,
              static_cast<unsigned long long>(report.total_evaluations),
              report.wall_time_s);
}

namespace {

json parse_json_file(const std::filesystem::path& file) {
  try {
    return json::parse(read_file(file));
  } catch (const json::parse_error& e) {
    throw ScenarioError("cannot parse '" + file.string() + "': " + e.what());
  }
}

double get_num(const json& j, const char* key, const std::string& ctx,
               double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ScenarioError(ctx + ": missing number '" + key + "'");
    return fallback;
  }
  if (!j[key].is_number()) throw ScenarioError(ctx + ": '" + key + "' must be a number");
  return j[key].get<double>();
}

/// Accepts either a full kpis.json or a flat object with the same keys.
BenefitInputs benefit_inputs_from(const json& root, const std::string& ctx) {
  const json& k = root.contains("kpis") ? root["kpis"] : root;
  BenefitInputs in;
  in.tac_revenue_meur = get_num(k, "tac_revenue_eur", ctx, 0.0) / 1e6;
  in.delay_cost_meur = get_num(k, "delay_cost_saving_eur", ctx, 0.0) / 1e6;
  in.rail_tonkm = get_num(k, "rail_tonkm", ctx, 0.0, true);
  const double transport_cost = get_num(k, "transport_cost_eur", ctx, 0.0);
  in.rail_cost_per_tkm = in.rail_tonkm > 0.0 ? transport_cost / in.rail_tonkm : 0.0;
  if (root.contains("context") && root["context"].contains("cost")) {
    in.road_cost_per_tkm =
        get_num(root["context"]["cost"], "road_cost_default", ctx, 0.0);
  }
  in.road_cost_per_tkm = get_num(k, "road_cost_per_tkm", ctx, in.road_cost_per_tkm);
  in.rail_cost_per_tkm = get_num(k, "rail_cost_per_tkm", ctx, in.rail_cost_per_tkm);
  return in;
}

}  // namespace

void cmd_appraise(const AppraiseOptions& opts) {
  const json jkpis = parse_json_file(opts.kpis_file);
  const json jbaseline = parse_json_file(opts.baseline_file);
  const json jbounds = parse_json_file(opts.bounds_file);
  const json jplan = parse_json_file(opts.plan_file);

  const BenefitInputs scenario_in = benefit_inputs_from(jkpis, "kpis");
  const BenefitInputs baseline_in = benefit_inputs_from(jbaseline, "baseline");

  ExternalityBounds bounds;
  bounds.road_lower_ct = get_num(jbounds, "road_lower_ct_per_tkm", "bounds", bounds.road_lower_ct);
  bounds.road_upper_ct = get_num(jbounds, "road_upper_ct_per_tkm", "bounds", bounds.road_upper_ct);
  bounds.rail_lower_ct = get_num(jbounds, "rail_lower_ct_per_tkm", "bounds", bounds.rail_lower_ct);
  bounds.rail_upper_ct = get_num(jbounds, "rail_upper_ct_per_tkm", "bounds", bounds.rail_upper_ct);
  bounds.inflation_factor = get_num(jbounds, "inflation_factor", "bounds", bounds.inflation_factor);

  InvestmentPlan plan;
  plan.base_year = static_cast<int>(get_num(jplan, "base_year", "plan", 2023));
  plan.discount_rate = get_num(jplan, "discount_rate", "plan", plan.discount_rate);
  plan.tax_recovery_factor =
      get_num(jplan, "tax_recovery_factor", "plan", plan.tax_recovery_factor);
  const double horizon_years = get_num(jplan, "horizon_years", "plan", 0.0, true);
  if (jplan.contains("periods")) {
    // Period totals spread uniformly over their years.
    for (const json& period : jplan["periods"]) {
      const int from = static_cast<int>(get_num(period, "from_year", "plan.periods", 0, true));
      const int to = static_cast<int>(get_num(period, "to_year", "plan.periods", 0, true));
      const double total_meur = get_num(period, "total_beur", "plan.periods", 0.0, true) * 1000.0;
      if (to < from) throw ScenarioError("plan.periods: inverted year range");
      const int years = to - from + 1;
      for (int y = from; y <= to; ++y) {
        plan.amounts_meur.emplace_back(y, total_meur / years);
      }
    }
  }
  if (jplan.contains("entries")) {
    for (const json& entry : jplan["entries"]) {
      plan.amounts_meur.emplace_back(
          static_cast<int>(get_num(entry, "year", "plan.entries", 0, true)),
          get_num(entry, "amount_meur", "plan.entries", 0.0, true));
    }
  }

  const BenefitParams params{plan.tax_recovery_factor};
  BenefitReport report = benefit_report(scenario_in, baseline_in, bounds, params);
  const NpvResult investment = npv(plan, horizon_years);
  report.bcr = bcr_pct(report.total_meur, investment.annualized_meur_per_year);

  json out;
  out["inputs"] = {
      {"scenario",
       {{"tac_revenue_meur", scenario_in.tac_revenue_meur},
        {"delay_cost_meur", scenario_in.delay_cost_meur},
        {"rail_tonkm", scenario_in.rail_tonkm},
        {"road_cost_per_tkm", scenario_in.road_cost_per_tkm},
        {"rail_cost_per_tkm", scenario_in.rail_cost_per_tkm}}},
      {"baseline",
       {{"tac_revenue_meur", baseline_in.tac_revenue_meur},
        {"delay_cost_meur", baseline_in.delay_cost_meur},
        {"rail_tonkm", baseline_in.rail_tonkm}}}};
  out["benefits"] = {
      {"tac_revenue_meur", report.tac_revenue_meur},
      {"externality_saving_meur",
       {{"lower", report.externality_saving_meur.lower},
        {"upper", report.externality_saving_meur.upper}}},
      {"foc_benefit_meur", report.foc_benefit_meur},
      {"social_benefit_meur", report.social_benefit_meur},
      {"total_meur",
       {{"lower", report.total_meur.lower}, {"upper", report.total_meur.upper}}},
      {"shifted_tonkm", report.shifted_tonkm}};
  out["investment"] = {{"npv_meur", investment.npv_meur},
                       {"annualized_meur_per_year", investment.annualized_meur_per_year},
                       {"horizon_years", horizon_years}};
  out["bcr_pct"] = {{"lower", report.bcr.lower}, {"upper", report.bcr.upper}};

  atomic_write(opts.out_dir / "benefits.json", out.dump(2) + "\n");
  CsvWriter csv({"tac_revenue_meur", "externality_saving_lower_meur",
                 "externality_saving_upper_meur", "foc_benefit_meur",
                 "social_benefit_meur", "total_lower_meur", "total_upper_meur",
                 "annual_cost_meur_per_year", "bcr_lower_pct", "bcr_upper_pct"});
  csv.add_row({format_double(report.tac_revenue_meur),
               format_double(report.externality_saving_meur.lower),
               format_double(report.externality_saving_meur.upper),
               format_double(report.foc_benefit_meur),
               format_double(report.social_benefit_meur),
               format_double(report.total_meur.lower),
               format_double(report.total_meur.upper),
               format_double(investment.annualized_meur_per_year),
               format_double(report.bcr.lower), format_double(report.bcr.upper)});
  atomic_write(opts.out_dir / "bcr.csv", csv.str());

  std::printf("appraise: total benefit [%.2f, %.2f] M eur vs %.1f M eur/yr: "
              "BCR [%.2f%%, %.2f%%]\n",
              report.total_meur.lower, report.total_meur.upper,
              investment.annualized_meur_per_year, report.bcr.lower,
              report.bcr.upper);
}

}  // namespace railtac
