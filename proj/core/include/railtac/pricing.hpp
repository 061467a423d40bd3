#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "railtac/network.hpp"

namespace railtac {

enum class SchemeKind { proportional, path_based, time_varying };

/// One charge proportion for every path and instant.
struct Proportional {
  double p = 0.0;
  bool operator==(const Proportional&) const = default;
};

/// One proportion per path, constant in time. Entries sorted by path id.
struct PathBased {
  std::vector<std::pair<std::string, double>> p_by_path;
  bool operator==(const PathBased&) const = default;
};

/// Piecewise-constant proportions on a shared time grid delta_0 < ... <
/// delta_k with delta_0 = 0. Interval j covers [delta_j, delta_j+1); the last
/// interval is closed on the right. Entries sorted by path id, one value per
/// interval.
struct TimeVarying {
  std::vector<double> grid_h;
  std::vector<std::pair<std::string, std::vector<double>>> p_by_path;
  bool operator==(const TimeVarying&) const = default;
};

struct TacScheme {
  std::variant<Proportional, PathBased, TimeVarying> variant;
  double p_min = 0.0;
  double p_max = 0.25;  // regulatory cap: charges at most 25% of fixed costs

  SchemeKind kind() const;
  /// Proportion p_r(t) applying to a path at time t. Rejects t outside the
  /// horizon ([0, inf) for time-constant variants, [0, delta_k] otherwise).
  double proportion_at(const std::string& path_id, double t) const;
  /// Throws std::invalid_argument on any broken structural invariant.
  void validate() const;

  bool operator==(const TacScheme&) const = default;
};

/// Charge intensity lambda_r(t) = p_r(t) * c_ell / tau_bar_r, in eur per
/// t*km and hour of path occupation.
double lambda_at(const TacScheme& scheme, const Path& path, double t,
                 double c_ell);

/// Revenue earned by one completed packet: the per-tkm-hour intensity scaled
/// by the path length and the packet's tonnage gives a per-train-hour rate,
/// times the hours of path occupation.
inline double packet_revenue_eur(double lambda_per_tkm_h, double travel_time_h,
                                 double path_length_km, double packet_tons) {
  return lambda_per_tkm_h * path_length_km * packet_tons * travel_time_h;
}

/// Coordinate layout of a flattened scheme. Path-based coordinates follow
/// the sorted path ids; time-varying ones are path-major, interval-minor.
struct VectorLayout {
  SchemeKind kind = SchemeKind::proportional;
  std::vector<std::string> path_ids;
  std::vector<double> grid_h;
  double p_min = 0.0;
  double p_max = 0.25;

  std::size_t dimension() const;
  std::vector<std::string> coordinate_names() const;
  bool operator==(const VectorLayout&) const = default;
};

struct DecisionVector {
  VectorLayout layout;
  std::vector<double> values;
};

DecisionVector to_vector(const TacScheme& scheme);

/// Inverse of to_vector; rejects values outside [p_min, p_max] or a length
/// that does not match the layout.
TacScheme from_vector(const VectorLayout& layout, std::span<const double> values);

}  // namespace railtac
