#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "railtac/demand.hpp"
#include "railtac/network.hpp"
#include "railtac/pricing.hpp"

namespace railtac {

struct SimConfig {
  double t_max_h = 0.0;
  double delta_f_trains = 1.0;        // packet size
  double kappa_trains_per_ton = 0.0;  // freight-to-train conversion
  bool record_trace = false;          // keep per-event rows and arc entry times

  double tons_per_packet() const { return delta_f_trains / kappa_trains_per_ton; }
};

struct DemandModel {
  std::vector<ODPair> od_pairs;
  CostParams cost;
  LogitParams logit;
};

enum class PacketState { state0, state1 };

/// One row per processed event, in processing order.
struct TraceRow {
  std::uint64_t event_id = 0;
  std::int64_t packet_id = -1;  // -1 while latent
  PacketState state = PacketState::state0;
  std::string arc_id;
  double fire_time_h = 0.0;
};

struct PacketRecord {
  std::int64_t packet_id = -1;
  double departure_h = 0.0;
  double completion_h = 0.0;
  double realized_travel_time_h = 0.0;
  double lambda_at_departure = 0.0;          // eur/(t*km*h), quoted at departure
  double tau_estimate_at_departure_h = 0.0;  // live path estimate when loaded
  double revenue_eur = 0.0;                  // realized-time basis; 0 until completed
  bool completed = false;
};

struct PathResult {
  std::string path_id;
  std::vector<PacketRecord> packets;
  double live_travel_time_h = 0.0;  // final estimate after the last completion
};

struct OdResult {
  std::string od_id;
  double rail_tons = 0.0;
  double road_tons = 0.0;
  double total_tons = 0.0;
};

struct ArcResult {
  std::string arc_id;
  std::int64_t total_entries = 0;
  std::vector<std::int64_t> entries_per_day;
  std::vector<double> entry_times_h;  // populated when the trace is recorded
};

struct SimResult {
  std::vector<PathResult> paths;  // network path order
  std::vector<OdResult> ods;      // demand order
  std::vector<ArcResult> arcs;    // regular arcs, network order
  std::vector<TraceRow> trace;
  std::uint64_t events_created = 0;
  std::uint64_t events_processed = 0;
  std::uint64_t packets_created = 0;
  double clock_end_h = 0.0;

  const PathResult* find_path(const std::string& id) const;
  const OdResult* find_od(const std::string& id) const;
};

/// Processing time of one packet through a running-section gate.
double dwell_time(double delta_f, double k_eff);

/// Heap key of the pending-event set: earliest fire time first, creation
/// order breaking ties.
struct EventKey {
  double fire_time = 0.0;
  std::uint64_t event_id = 0;

  friend bool operator<(const EventKey& a, const EventKey& b) {
    if (a.fire_time != b.fire_time) return a.fire_time < b.fire_time;
    return a.event_id < b.event_id;
  }
};

/// Runs the event loop with demand-driven packet generation: latent events
/// accumulate demand at the entry connectors, loaded packets propagate
/// through vertical queues and running sections until the clock passes the
/// horizon.
SimResult run(const Network& net, const DemandModel& demand,
              const TacScheme& scheme, const SimConfig& config);

/// Deterministic replay driver: packets are injected on their path's origin
/// connector at the given times, with no demand model and zero charges.
struct ReleasePlan {
  std::vector<std::pair<std::string, std::vector<double>>> releases;  // path id -> hours
};

SimResult run_releases(const Network& net, const ReleasePlan& plan,
                       const SimConfig& config);

}  // namespace railtac
