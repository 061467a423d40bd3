#include "railtac/step_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace railtac {

StepFunction::StepFunction(std::vector<double> starts,
                           std::vector<double> values, double domain_end)
    : starts_(std::move(starts)),
      values_(std::move(values)),
      domain_end_(domain_end) {
  if (starts_.empty() || starts_.size() != values_.size()) {
    throw std::invalid_argument("StepFunction: breakpoint/value size mismatch");
  }
  if (!std::is_sorted(starts_.begin(), starts_.end()) ||
      std::adjacent_find(starts_.begin(), starts_.end()) != starts_.end()) {
    throw std::invalid_argument("StepFunction: breakpoints must be strictly increasing");
  }
  if (domain_end_ <= starts_.back()) {
    throw std::invalid_argument("StepFunction: domain end before last breakpoint");
  }
}

std::size_t StepFunction::piece_index(double t) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  if (it == starts_.begin()) return 0;
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

double StepFunction::value_at(double t) const {
  return values_[piece_index(t)];
}

double StepFunction::integral(double a, double b) const {
  a = std::max(a, domain_start());
  b = std::min(b, domain_end_);
  if (b <= a) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < starts_.size(); ++i) {
    const double lo = std::max(a, starts_[i]);
    const double hi = std::min(b, i + 1 < starts_.size() ? starts_[i + 1] : domain_end_);
    if (hi > lo) sum += values_[i] * (hi - lo);
  }
  return sum;
}

std::optional<double> StepFunction::accumulate_until(double from,
                                                     double target) const {
  from = std::max(from, domain_start());
  if (target <= 0.0) return from;
  if (from >= domain_end_) return std::nullopt;
  double remaining = target;
  for (std::size_t i = piece_index(from); i < starts_.size(); ++i) {
    const double lo = std::max(from, starts_[i]);
    const double hi = i + 1 < starts_.size() ? starts_[i + 1] : domain_end_;
    const double rate = values_[i];
    if (rate > 0.0) {
      const double mass = rate * (hi - lo);
      if (remaining <= mass) {
        return lo + remaining / rate;
      }
      remaining -= mass;
    }
  }
  return std::nullopt;
}

bool StepFunction::non_negative() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v >= 0.0; });
}

}  // namespace railtac
