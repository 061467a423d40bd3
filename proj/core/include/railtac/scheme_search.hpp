#pragma once

#include <optional>
#include <string>

#include "railtac/optimizer.hpp"
#include "railtac/scenario.hpp"

namespace railtac {

enum class SearchAlgo { grid, pattern_search };

struct SchemeSearchConfig {
  SchemeKind kind = SchemeKind::proportional;  // proportional or path_based
  SearchAlgo algo = SearchAlgo::pattern_search;
  double p_min = 0.0;
  double p_max = 0.25;
  GridScanConfig grid;          // the proportional stage
  PatternSearchConfig pattern;  // refinement stage; initial point is seeded
  RevenueBasis basis = RevenueBasis::realized_time;
};

struct SchemeSearchReport {
  TacScheme best_scheme;
  double best_z = 0.0;
  EvalOutcome best_outcome;
  VectorLayout layout;
  GridScanResult proportional_stage;
  std::optional<PatternSearchResult> pattern_stage;
  std::uint64_t total_evaluations = 0;
  double wall_time_s = 0.0;  // console diagnostics only, never serialized
};

/// Builds the simulation-backed objective for a scenario and policy, then
/// searches the scheme space. Path-based runs scan the proportional collapse
/// first and seed the pattern search with the uniform best; pure grid runs
/// stop after the scan.
SchemeSearchReport optimize_scheme(const Scenario& scenario,
                                   const SchemeSearchConfig& config,
                                   const Policy& policy);

/// The simulation objective as a box-constrained problem over the layout's
/// coordinates (exposed for sweeps and tests).
BoundedProblem make_scheme_problem(const Scenario& scenario,
                                   const VectorLayout& layout,
                                   const Policy& policy, RevenueBasis basis);

/// Layout helpers for a scenario's path set.
VectorLayout proportional_layout(double p_min, double p_max);
VectorLayout path_based_layout(const Scenario& scenario, double p_min, double p_max);

}  // namespace railtac
