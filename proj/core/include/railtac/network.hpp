#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace railtac {

enum class NodeKind { regular, centroid };
enum class ArcKind { regular, connector };

struct Node {
  std::string id;
  NodeKind kind = NodeKind::regular;
  std::string country_tag;  // selects the country utility constant; may be empty
  std::string name;
};

struct ProfileBand {
  double start_h = 0.0;  // hour of day, within [0, 24)
  double end_h = 24.0;
  double fraction = 1.0;  // in (0, 1]
};

/// Daily residual-capacity schedule. Bands must partition [0, 24); the
/// schedule repeats with a 24 h period.
struct CapacityProfile {
  std::string name;
  std::vector<ProfileBand> bands;

  double fraction_at(double hour_of_day) const;
};

struct Arc {
  std::string id;
  std::string from;
  std::string to;
  ArcKind kind = ArcKind::regular;
  double length_km = 0.0;
  double run_time_h = 0.0;                 // running-section travel time
  std::int64_t tracks_per_direction = 1;   // unidirectional tracks on this arc
  std::string profile;                     // capacity profile name; empty = flat

  // Six train paths per hour and track.
  double base_capacity() const { return 6.0 * static_cast<double>(tracks_per_direction); }
};

struct Path {
  std::string id;
  std::string od;
  std::vector<std::string> arcs;  // first and last entries are connectors
  double length_km = 0.0;         // sum over regular arcs
  double free_flow_time_h = 0.0;  // sum of run times, empty network
  double reference_speed_kmh = 0.0;  // commercial speed
  double reference_time_h = 0.0;     // length_km / reference_speed_kmh
};

struct OdRef {
  std::string id;
  std::string origin;       // centroid node
  std::string destination;  // centroid node
};

struct Violation {
  std::string entity;  // "node" | "arc" | "path" | "profile" | "od"
  std::string id;
  std::string message;
};

struct DisconnectedOd : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Network {
 public:
  std::vector<Node> nodes;
  std::vector<CapacityProfile> profiles;
  std::vector<Arc> arcs;
  std::vector<OdRef> od_pairs;
  std::vector<Path> paths;

  /// Rebuilds lookup indices and recomputes path length and free-flow time
  /// from the arc data. Call after mutating the containers above.
  void finalize();

  const Node* find_node(std::string_view id) const;
  const Arc* find_arc(std::string_view id) const;
  const CapacityProfile* find_profile(std::string_view name) const;
  const Path* find_path(std::string_view id) const;
  const OdRef* find_od(std::string_view id) const;
  std::vector<const Path*> paths_for_od(std::string_view od_id) const;

  /// Residual capacity of an arc at absolute time t (hours from midnight of
  /// day zero): base capacity scaled by the daily profile band containing
  /// mod(t, 24). Connectors are unbounded. Rejects negative t.
  double capacity_at(const Arc& arc, double t) const;

  /// Integral of capacity_at over [t0, t1], exact across band boundaries.
  double capacity_integral(const Arc& arc, double t0, double t1) const;

 private:
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::size_t> arc_index_;
  std::unordered_map<std::string, std::size_t> profile_index_;
  std::unordered_map<std::string, std::size_t> path_index_;
  std::unordered_map<std::string, std::size_t> od_index_;
};

/// Checks every structural invariant and returns one entry per breach.
/// Violations are data, not faults: an empty list means the network is sound.
std::vector<Violation> validate_network(const Network& net);

/// Minimum fixed-cost route between the centroids of an OD pair, with the
/// regular-arc length as the metric (connectors are free). Exact cost ties
/// break toward the lexicographically smaller arc-id sequence. Throws
/// DisconnectedOd when no route exists. Commercial speed fields of the
/// returned path are left unset.
Path min_cost_path(const Network& net, const OdRef& od);

/// Daily residual schedule of a mixed-traffic line: full capacity at night,
/// 30% in the morning and evening shoulders, 15% while passenger traffic
/// peaks.
CapacityProfile passenger_priority_profile(std::string name);

}  // namespace railtac
