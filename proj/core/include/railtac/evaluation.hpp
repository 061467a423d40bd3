#pragma once

#include <string>
#include <vector>

#include "railtac/demand.hpp"
#include "railtac/network.hpp"
#include "railtac/pricing.hpp"
#include "railtac/simulator.hpp"

namespace railtac {

/// Monetization of the road-vs-rail emission differential.
struct Policy {
  std::string name;
  double truck_emission_g_per_tkm = 0.0;
  double train_emission_g_per_tkm = 0.0;
  double credit_eur_per_tco2e = 0.0;

  double eta_per_tkm() const {
    return (truck_emission_g_per_tkm - train_emission_g_per_tkm) * 1e-6 *
           credit_eur_per_tco2e;
  }
};

/// Which travel time prices a packet's charge: the realized one (replayable
/// from the trace) or the live estimate quoted at departure.
enum class RevenueBasis { realized_time, estimated_time };

struct Kpis {
  double tac_revenue_eur = 0.0;
  double co2e_rights_value_eur = 0.0;
  double transport_cost_eur = 0.0;
  double delay_cost_saving_eur = 0.0;  // negative = saving against commercial speed
  double avg_speed_kmh = 0.0;
  double rail_mtons = 0.0;
  double rail_share_pct = 0.0;
  double rail_tons = 0.0;
  double road_tons = 0.0;
  double total_tons = 0.0;
  double rail_tonkm = 0.0;
  double road_tonkm = 0.0;
  std::int64_t completed_packets = 0;
  std::int64_t incomplete_packets = 0;
};

struct PathRevenue {
  std::string path_id;
  double revenue_eur = 0.0;
  std::int64_t completed_packets = 0;
  double total_travel_time_h = 0.0;  // sum of priced travel times
};

struct ObjectiveBreakdown {
  double revenue_eur = 0.0;
  double externality_eur = 0.0;
  double z_eur = 0.0;  // revenue - externality
  std::vector<PathRevenue> per_path;
  Kpis kpis;
};

/// Charge revenue per path: every completed packet contributes its quoted
/// intensity times priced travel time, packets still in transit at the
/// horizon contribute nothing.
std::vector<PathRevenue> revenue(const SimResult& result, const TacScheme& scheme,
                                 const Network& net, const CostParams& cost,
                                 const SimConfig& config,
                                 RevenueBasis basis = RevenueBasis::realized_time);

double total_revenue(const std::vector<PathRevenue>& per_path);

/// Monetized externality of the freight left on road over the horizon.
double externality_cost(const SimResult& result, const Policy& policy,
                        const std::vector<ODPair>& od_pairs);

ObjectiveBreakdown objective(const SimResult& result, const TacScheme& scheme,
                             const Policy& policy, const Network& net,
                             const std::vector<ODPair>& od_pairs,
                             const CostParams& cost, const SimConfig& config,
                             RevenueBasis basis = RevenueBasis::realized_time);

}  // namespace railtac
