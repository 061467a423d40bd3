#pragma once

#include <optional>
#include <vector>

namespace railtac {

/// Piecewise-constant function of time. Piece i covers [starts[i], starts[i+1])
/// and the last piece runs to domain_end. Used for demand intensity profiles.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<double> starts, std::vector<double> values,
               double domain_end);

  double value_at(double t) const;

  /// Exact integral over [a, b] intersected with the domain.
  double integral(double a, double b) const;

  /// Smallest T >= from with integral(from, T) == target, walking pieces in
  /// order with a closed form per piece. Empty when the mass available up to
  /// domain_end falls short of target.
  std::optional<double> accumulate_until(double from, double target) const;

  double domain_start() const { return starts_.front(); }
  double domain_end() const { return domain_end_; }
  bool non_negative() const;
  bool empty() const { return starts_.empty(); }
  const std::vector<double>& starts() const { return starts_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t piece_index(double t) const;

  std::vector<double> starts_;
  std::vector<double> values_;
  double domain_end_ = 0.0;
};

}  // namespace railtac
