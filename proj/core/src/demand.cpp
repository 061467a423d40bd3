#include "railtac/demand.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace railtac {

namespace {
constexpr double kShareFloor = 1e-15;  // keep shares strictly inside (0,1)
}

double LogitParams::alpha_for(const std::string& tag) const {
  if (tag.empty()) return 0.0;
  auto it = alpha_by_tag.find(tag);
  if (it == alpha_by_tag.end()) {
    throw std::out_of_range("no alpha constant for tag '" + tag + "'");
  }
  return it->second;
}

RailCostBreakdown rail_cost(const Path& path, double tau_now_h,
                            double lambda_now, const CostParams& params) {
  if (tau_now_h <= 0.0) {
    throw std::invalid_argument("rail_cost: travel time must be positive");
  }
  if (path.length_km <= 0.0) {
    throw std::invalid_argument("rail_cost: path '" + path.id + "' has no length");
  }
  RailCostBreakdown out;
  out.delay_component = std::max(
      0.0, params.delay_cost_per_t_h * (tau_now_h - path.reference_time_h) /
               path.length_km);
  out.access_component = lambda_now * tau_now_h;
  out.fixed_component = params.rail_fixed_cost_per_tkm;
  out.total = out.delay_component + out.access_component + out.fixed_component;
  return out;
}

double rail_share(double u_rail, double v_road) {
  const double m = std::max(u_rail, v_road);
  const double e_rail = std::exp(u_rail - m);
  const double share = e_rail / (e_rail + std::exp(v_road - m));
  return std::clamp(share, kShareFloor, 1.0 - kShareFloor);
}

std::vector<double> path_shares(double v_road, std::span<const double> u_rail) {
  double m = v_road;
  for (double u : u_rail) m = std::max(m, u);
  double denom = std::exp(v_road - m);
  for (double u : u_rail) denom += std::exp(u - m);
  std::vector<double> shares(u_rail.size());
  for (std::size_t i = 0; i < u_rail.size(); ++i) {
    shares[i] = std::clamp(std::exp(u_rail[i] - m) / denom, kShareFloor,
                           1.0 - kShareFloor);
  }
  return shares;
}

Utilities utilities(const ODPair& od, const RailCostBreakdown& cost,
                    const LogitParams& logit) {
  Utilities out;
  out.u_rail = logit.beta_rail * cost.total;
  out.v_road = logit.beta_road * od.road_cost_per_tkm +
               logit.alpha_for(od.origin_alpha_tag) +
               logit.alpha_for(od.dest_alpha_tag);
  return out;
}

std::optional<double> next_entry_time(const ODPair& od, double share,
                                      double from_h, double delta_f,
                                      double kappa) {
  if (!(share > 0.0 && share < 1.0)) {
    throw std::invalid_argument("next_entry_time: share outside (0,1)");
  }
  if (delta_f <= 0.0 || kappa <= 0.0) {
    throw std::invalid_argument("next_entry_time: delta_f and kappa must be positive");
  }
  return od.demand_profile.accumulate_until(from_h, delta_f / (kappa * share));
}

}  // namespace railtac
