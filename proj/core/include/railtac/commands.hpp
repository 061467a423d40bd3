#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "railtac/evaluation.hpp"
#include "railtac/scheme_search.hpp"

namespace railtac {

/// File-level commands behind the CLI. Each one loads its inputs, computes,
/// and writes every output atomically under the output directory; failures
/// surface as exceptions. Output files are byte-stable across identical runs;
/// anything timing-related goes to stdout only.

struct SimulateOptions {
  std::filesystem::path scenario_file;
  std::filesystem::path scheme_file;  // empty = zero charges
  std::string policy;
  std::filesystem::path out_dir;
  bool trace = false;
  RevenueBasis basis = RevenueBasis::realized_time;
};

void cmd_simulate(const SimulateOptions& opts);

struct OptimizeOptions {
  std::filesystem::path scenario_file;
  std::string scheme_kind = "proportional";  // proportional | path-based
  std::string algo = "pattern-search";       // pattern-search | grid
  std::string policy;
  std::filesystem::path out_dir;
  std::size_t grid_steps = 26;
  std::uint64_t max_evaluations = 10000;
  double mesh_tolerance = 1e-4;
  bool parallel_poll = false;
  double p_min = 0.0;
  double p_max = 0.25;
  RevenueBasis basis = RevenueBasis::realized_time;
};

void cmd_optimize(const OptimizeOptions& opts);

struct SweepOptions {
  std::filesystem::path scenario_file;
  std::size_t steps = 26;
  std::string policy;
  std::filesystem::path out_dir;
  double p_min = 0.0;
  double p_max = 0.25;
  RevenueBasis basis = RevenueBasis::realized_time;
};

void cmd_sweep(const SweepOptions& opts);

struct AppraiseOptions {
  std::filesystem::path kpis_file;      // kpis.json from a simulate run
  std::filesystem::path baseline_file;  // no-intervention KPIs
  std::filesystem::path bounds_file;    // externality cost figures
  std::filesystem::path plan_file;      // investment plan
  std::filesystem::path out_dir;
};

void cmd_appraise(const AppraiseOptions& opts);

}  // namespace railtac
