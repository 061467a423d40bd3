#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "railtac/network.hpp"
#include "railtac/step_function.hpp"

namespace railtac {

struct ODPair {
  std::string id;
  std::string origin;
  std::string destination;
  StepFunction demand_profile;     // tons/h over [0, T_max]
  double road_cost_per_tkm = 0.0;  // road alternative, eur/(t*km)
  std::string origin_alpha_tag;    // resolved through LogitParams::alpha_by_tag
  std::string dest_alpha_tag;
  double eta_distance_km = 0.0;    // distance basis scaling per-tkm externality rates
};

struct CostParams {
  double delay_cost_per_t_h = 2.23;        // eur/(t*h) of delay
  double rail_fixed_cost_per_tkm = 0.045;  // eur/(t*km) at commercial speed
  double reference_speed_kmh = 53.0;       // network-wide commercial speed
  double road_cost_default = 0.385;        // eur/(t*km) fallback
};

struct LogitParams {
  double beta_rail = 0.0;
  double beta_road = 0.0;
  std::map<std::string, double> alpha_by_tag;

  /// Empty tag means no constant. Unknown non-empty tags throw.
  double alpha_for(const std::string& tag) const;
};

/// Per-tkm decomposition of the rail cost faced by the operator.
struct RailCostBreakdown {
  double delay_component = 0.0;   // extra cost of running under commercial speed
  double access_component = 0.0;  // track-access charge share
  double fixed_component = 0.0;
  double total = 0.0;
};

/// Rail cost per ton-km for a trip on `path` with current travel-time estimate
/// `tau_now_h` and charge intensity `lambda_now` (eur per t*km and hour of
/// occupation). The delay component clamps at zero when the trip beats the
/// commercial reference time; the saving is reported as a KPI instead.
RailCostBreakdown rail_cost(const Path& path, double tau_now_h,
                            double lambda_now, const CostParams& params);

/// Binary logit share for rail, computed with max-subtraction so it never
/// overflows. The road share is the exact complement 1 - rail_share.
double rail_share(double u_rail, double v_road);

/// General per-path shares against a single road alternative: share_r =
/// exp(U_r) / (exp(V) + sum exp(U_r')). Collapses to rail_share for one path.
std::vector<double> path_shares(double v_road, std::span<const double> u_rail);

struct Utilities {
  double u_rail = 0.0;
  double v_road = 0.0;
};

Utilities utilities(const ODPair& od, const RailCostBreakdown& cost,
                    const LogitParams& logit);

/// Smallest T >= from_h at which kappa * share * integral of the OD demand
/// accumulates one packet of delta_f trains. Empty when the horizon runs out
/// first (not a fault: the train is never filled).
std::optional<double> next_entry_time(const ODPair& od, double share,
                                      double from_h, double delta_f,
                                      double kappa);

}  // namespace railtac
