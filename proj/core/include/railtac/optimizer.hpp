#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace railtac {

struct EvalOutcome {
  double z = 0.0;
  double revenue_eur = 0.0;
  double externality_eur = 0.0;
};

/// Box-constrained maximization problem. The objective must be pure: equal
/// inputs give bit-equal outcomes, and concurrent calls are safe.
struct BoundedProblem {
  std::vector<double> lower;
  std::vector<double> upper;
  std::function<EvalOutcome(std::span<const double>)> objective;

  std::size_t dimension() const { return lower.size(); }
};

struct EvalRecord {
  std::uint64_t index = 0;
  std::vector<double> point;
  EvalOutcome outcome;
};

struct IterationRecord {
  std::uint64_t iteration = 0;
  double mesh = 0.0;
  double best_z = 0.0;
};

struct PatternSearchConfig {
  std::vector<double> initial_point;
  double initial_mesh = 0.0;  // <= 0 picks a quarter of the widest bound range
  double contraction_factor = 0.5;
  double expansion_factor = 2.0;
  double mesh_tolerance = 1e-4;
  std::uint64_t max_evaluations = 10000;
  std::vector<std::size_t> poll_order;  // coordinate permutation; empty = identity
  bool parallel_poll = false;           // evaluate poll points concurrently
};

struct PatternSearchResult {
  std::vector<double> best_point;
  double best_z = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;  // mesh fell below tolerance (vs. budget exhausted)
  std::vector<IterationRecord> history;
  std::vector<EvalRecord> log;
};

/// Compass pattern search: poll +/- mesh along each coordinate, clipped to
/// the box; move to the best strictly improving poll point and expand the
/// mesh, contract on failure. Poll outcomes are reduced in poll order, so
/// parallel and sequential runs return identical results.
PatternSearchResult pattern_search(const BoundedProblem& problem,
                                   const PatternSearchConfig& config);

struct GridScanConfig {
  std::size_t steps = 26;  // number of grid points including both bounds
};

struct GridScanResult {
  double best_value = 0.0;
  double best_z = 0.0;
  std::size_t best_index = 0;
  std::vector<EvalRecord> curve;
};

/// Brute-force scan of a one-dimensional problem over a uniform grid; ties
/// keep the first index.
GridScanResult grid_scan(const BoundedProblem& problem, const GridScanConfig& config);

}  // namespace railtac
