#include "railtac/optimizer.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace railtac {

namespace {

void check_problem(const BoundedProblem& problem) {
  if (problem.lower.empty() || problem.lower.size() != problem.upper.size()) {
    throw std::invalid_argument("problem bounds malformed");
  }
  for (std::size_t i = 0; i < problem.lower.size(); ++i) {
    if (!(problem.lower[i] <= problem.upper[i])) {
      throw std::invalid_argument("problem bounds inverted");
    }
  }
  if (!problem.objective) {
    throw std::invalid_argument("problem has no objective");
  }
}

std::vector<EvalOutcome> evaluate_batch(const BoundedProblem& problem,
                                        const std::vector<std::vector<double>>& points,
                                        bool parallel) {
  std::vector<EvalOutcome> out(points.size());
  if (parallel && points.size() > 1) {
    std::vector<std::future<EvalOutcome>> futures;
    futures.reserve(points.size());
    for (const auto& point : points) {
      futures.push_back(std::async(std::launch::async, [&problem, &point] {
        return problem.objective(point);
      }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) out[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = problem.objective(points[i]);
    }
  }
  return out;
}

}  // namespace

PatternSearchResult pattern_search(const BoundedProblem& problem,
                                   const PatternSearchConfig& config) {
  check_problem(problem);
  const std::size_t dim = problem.dimension();
  if (config.initial_point.size() != dim) {
    throw std::invalid_argument("initial point dimension mismatch");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (config.initial_point[i] < problem.lower[i] ||
        config.initial_point[i] > problem.upper[i]) {
      throw std::invalid_argument("initial point infeasible");
    }
  }
  if (!(config.contraction_factor > 0.0 && config.contraction_factor < 1.0) ||
      !(config.expansion_factor >= 1.0)) {
    throw std::invalid_argument("mesh factors must satisfy 0 < contraction < 1 <= expansion");
  }
  if (!(config.mesh_tolerance > 0.0)) {
    throw std::invalid_argument("mesh tolerance must be positive");
  }
  if (config.max_evaluations == 0) {
    throw std::invalid_argument("evaluation budget must be positive");
  }
  std::vector<std::size_t> order = config.poll_order;
  if (order.empty()) {
    order.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) order[i] = i;
  } else if (order.size() != dim) {
    throw std::invalid_argument("poll order must permute all coordinates");
  }

  double max_range = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    max_range = std::max(max_range, problem.upper[i] - problem.lower[i]);
  }
  double mesh = config.initial_mesh > 0.0 ? config.initial_mesh : max_range / 4.0;

  PatternSearchResult result;
  result.best_point = config.initial_point;
  const EvalOutcome seed = problem.objective(result.best_point);
  result.best_z = seed.z;
  result.evaluations = 1;
  result.log.push_back(EvalRecord{0, result.best_point, seed});
  result.history.push_back(IterationRecord{0, mesh, result.best_z});

  std::uint64_t iteration = 0;
  while (mesh >= config.mesh_tolerance &&
         result.evaluations < config.max_evaluations) {
    ++iteration;
    std::vector<std::vector<double>> poll;
    for (std::size_t coord : order) {
      for (double sign : {+1.0, -1.0}) {
        std::vector<double> candidate = result.best_point;
        candidate[coord] = std::clamp(candidate[coord] + sign * mesh,
                                      problem.lower[coord], problem.upper[coord]);
        if (candidate[coord] != result.best_point[coord]) {
          poll.push_back(std::move(candidate));
        }
      }
    }
    const auto budget_left = config.max_evaluations - result.evaluations;
    if (poll.size() > budget_left) poll.resize(budget_left);
    if (poll.empty()) break;  // fully clipped or budget exhausted

    const auto outcomes = evaluate_batch(problem, poll, config.parallel_poll);
    std::size_t best_idx = poll.size();
    for (std::size_t i = 0; i < poll.size(); ++i) {
      result.log.push_back(EvalRecord{result.evaluations + i, poll[i], outcomes[i]});
      if (outcomes[i].z > result.best_z &&
          (best_idx == poll.size() || outcomes[i].z > outcomes[best_idx].z)) {
        best_idx = i;
      }
    }
    result.evaluations += poll.size();

    if (best_idx < poll.size()) {
      result.best_point = poll[best_idx];
      result.best_z = outcomes[best_idx].z;
      mesh = std::min(mesh * config.expansion_factor, max_range);
    } else {
      mesh *= config.contraction_factor;
    }
    result.history.push_back(IterationRecord{iteration, mesh, result.best_z});
  }
  result.converged = mesh < config.mesh_tolerance;
  return result;
}

GridScanResult grid_scan(const BoundedProblem& problem, const GridScanConfig& config) {
  check_problem(problem);
  if (problem.dimension() != 1) {
    throw std::invalid_argument("grid_scan expects a one-dimensional problem");
  }
  if (config.steps == 0) {
    throw std::invalid_argument("grid needs at least one point");
  }
  const double lo = problem.lower[0];
  const double hi = problem.upper[0];
  GridScanResult result;
  for (std::size_t i = 0; i < config.steps; ++i) {
    const double p =
        config.steps == 1
            ? lo
            : lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(config.steps - 1);
    const std::vector<double> point{p};
    const EvalOutcome outcome = problem.objective(point);
    result.curve.push_back(EvalRecord{i, point, outcome});
    if (i == 0 || outcome.z > result.best_z) {
      result.best_z = outcome.z;
      result.best_value = p;
      result.best_index = i;
    }
  }
  return result;
}

}  // namespace railtac
