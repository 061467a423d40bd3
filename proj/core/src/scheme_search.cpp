#include "railtac/scheme_search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace railtac {

VectorLayout proportional_layout(double p_min, double p_max) {
  VectorLayout layout;
  layout.kind = SchemeKind::proportional;
  layout.p_min = p_min;
  layout.p_max = p_max;
  return layout;
}

VectorLayout path_based_layout(const Scenario& scenario, double p_min, double p_max) {
  VectorLayout layout;
  layout.kind = SchemeKind::path_based;
  layout.p_min = p_min;
  layout.p_max = p_max;
  for (const Path& path : scenario.network.paths) layout.path_ids.push_back(path.id);
  std::sort(layout.path_ids.begin(), layout.path_ids.end());
  return layout;
}

BoundedProblem make_scheme_problem(const Scenario& scenario,
                                   const VectorLayout& layout,
                                   const Policy& policy, RevenueBasis basis) {
  BoundedProblem problem;
  const std::size_t dim = layout.dimension();
  problem.lower.assign(dim, layout.p_min);
  problem.upper.assign(dim, layout.p_max);
  problem.objective = [&scenario, layout, policy, basis](std::span<const double> x) {
    const TacScheme scheme = from_vector(layout, x);
    const SimResult sim = run(scenario.network, scenario.demand, scheme, scenario.sim);
    const ObjectiveBreakdown ob =
        objective(sim, scheme, policy, scenario.network, scenario.demand.od_pairs,
                  scenario.demand.cost, scenario.sim, basis);
    return EvalOutcome{ob.z_eur, ob.revenue_eur, ob.externality_eur};
  };
  return problem;
}

SchemeSearchReport optimize_scheme(const Scenario& scenario,
                                   const SchemeSearchConfig& config,
                                   const Policy& policy) {
  if (config.kind == SchemeKind::time_varying) {
    throw std::invalid_argument("optimize_scheme handles proportional and path-based schemes");
  }
  if (config.algo == SearchAlgo::grid && config.kind != SchemeKind::proportional) {
    throw std::invalid_argument("grid scan applies to the proportional scheme only");
  }
  const auto start = std::chrono::steady_clock::now();
  SchemeSearchReport report;

  // Stage 1: brute-force scan of the single proportionality constant.
  const VectorLayout prop_layout = proportional_layout(config.p_min, config.p_max);
  const BoundedProblem prop_problem =
      make_scheme_problem(scenario, prop_layout, policy, config.basis);
  report.proportional_stage = grid_scan(prop_problem, config.grid);
  report.total_evaluations = report.proportional_stage.curve.size();

  const double grid_spacing =
      config.grid.steps > 1
          ? (config.p_max - config.p_min) / static_cast<double>(config.grid.steps - 1)
          : (config.p_max - config.p_min) / 4.0;

  if (config.algo == SearchAlgo::grid) {
    report.layout = prop_layout;
    report.best_scheme = from_vector(prop_layout, std::vector<double>{
                                                      report.proportional_stage.best_value});
    report.best_z = report.proportional_stage.best_z;
    report.best_outcome =
        report.proportional_stage.curve[report.proportional_stage.best_index].outcome;
  } else {
    // Stage 2: pattern-search refinement seeded with the stage-1 best,
    // expanded to the full vector for path-based schemes.
    report.layout = config.kind == SchemeKind::proportional
                        ? prop_layout
                        : path_based_layout(scenario, config.p_min, config.p_max);
    const BoundedProblem problem =
        make_scheme_problem(scenario, report.layout, policy, config.basis);
    PatternSearchConfig ps = config.pattern;
    if (ps.initial_point.empty()) {
      ps.initial_point.assign(report.layout.dimension(),
                              report.proportional_stage.best_value);
    }
    if (ps.initial_mesh <= 0.0) ps.initial_mesh = grid_spacing;
    report.pattern_stage = pattern_search(problem, ps);
    report.total_evaluations += report.pattern_stage->evaluations;
    report.best_scheme = from_vector(report.layout, report.pattern_stage->best_point);
    report.best_z = report.pattern_stage->best_z;
    for (const EvalRecord& rec : report.pattern_stage->log) {
      if (rec.point == report.pattern_stage->best_point) {
        report.best_outcome = rec.outcome;
      }
    }
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace railtac
