#include "railtac/evaluation.hpp"

#include <stdexcept>

namespace railtac {

std::vector<PathRevenue> revenue(const SimResult& result, const TacScheme& scheme,
                                 const Network& net, const CostParams& cost,
                                 const SimConfig& config, RevenueBasis basis) {
  std::vector<PathRevenue> out;
  const double tons = config.tons_per_packet();
  for (const PathResult& pr : result.paths) {
    const Path* path = net.find_path(pr.path_id);
    if (!path) {
      throw std::invalid_argument("result names unknown path '" + pr.path_id + "'");
    }
    PathRevenue rev;
    rev.path_id = pr.path_id;
    for (const PacketRecord& packet : pr.packets) {
      if (!packet.completed) continue;
      const double tau = basis == RevenueBasis::realized_time
                             ? packet.realized_travel_time_h
                             : packet.tau_estimate_at_departure_h;
      const double lambda = lambda_at(scheme, *path, packet.departure_h,
                                      cost.rail_fixed_cost_per_tkm);
      rev.revenue_eur += packet_revenue_eur(lambda, tau, path->length_km, tons);
      rev.total_travel_time_h += tau;
      ++rev.completed_packets;
    }
    out.push_back(rev);
  }
  return out;
}

double total_revenue(const std::vector<PathRevenue>& per_path) {
  double sum = 0.0;
  for (const PathRevenue& rev : per_path) sum += rev.revenue_eur;
  return sum;
}

double externality_cost(const SimResult& result, const Policy& policy,
                        const std::vector<ODPair>& od_pairs) {
  const double eta = policy.eta_per_tkm();
  if (eta == 0.0) return 0.0;
  double sum = 0.0;
  for (const ODPair& od : od_pairs) {
    const OdResult* res = result.find_od(od.id);
    if (!res) continue;
    if (od.eta_distance_km <= 0.0) {
      throw std::invalid_argument("OD '" + od.id + "' has no externality distance");
    }
    sum += eta * od.eta_distance_km * res->road_tons;
  }
  return sum;
}

ObjectiveBreakdown objective(const SimResult& result, const TacScheme& scheme,
                             const Policy& policy, const Network& net,
                             const std::vector<ODPair>& od_pairs,
                             const CostParams& cost, const SimConfig& config,
                             RevenueBasis basis) {
  ObjectiveBreakdown out;
  out.per_path = revenue(result, scheme, net, cost, config, basis);
  out.revenue_eur = total_revenue(out.per_path);
  out.externality_eur = externality_cost(result, policy, od_pairs);
  out.z_eur = out.revenue_eur - out.externality_eur;

  Kpis& k = out.kpis;
  k.tac_revenue_eur = out.revenue_eur;
  const double tons = config.tons_per_packet();
  double speed_sum = 0.0;
  for (const PathResult& pr : result.paths) {
    const Path* path = net.find_path(pr.path_id);
    for (const PacketRecord& packet : pr.packets) {
      if (!packet.completed) {
        ++k.incomplete_packets;
        continue;
      }
      ++k.completed_packets;
      speed_sum += path->length_km / packet.realized_travel_time_h;
      const double lambda = lambda_at(scheme, *path, packet.departure_h,
                                      cost.rail_fixed_cost_per_tkm);
      const RailCostBreakdown rc =
          rail_cost(*path, packet.realized_travel_time_h, lambda, cost);
      k.transport_cost_eur += rc.total * path->length_km * tons;
      k.delay_cost_saving_eur +=
          cost.delay_cost_per_t_h *
          (packet.realized_travel_time_h - path->reference_time_h) * tons;
    }
  }
  if (k.completed_packets > 0) {
    k.avg_speed_kmh = speed_sum / static_cast<double>(k.completed_packets);
  }
  for (const ODPair& od : od_pairs) {
    const OdResult* res = result.find_od(od.id);
    if (!res) continue;
    k.rail_tons += res->rail_tons;
    k.road_tons += res->road_tons;
    k.total_tons += res->total_tons;
    k.rail_tonkm += od.eta_distance_km * res->rail_tons;
    k.road_tonkm += od.eta_distance_km * res->road_tons;
  }
  k.rail_mtons = k.rail_tons / 1e6;
  if (k.total_tons > 0.0) k.rail_share_pct = 100.0 * k.rail_tons / k.total_tons;
  k.co2e_rights_value_eur = policy.eta_per_tkm() * k.rail_tonkm;
  return out;
}

}  // namespace railtac
