#include "railtac/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace railtac {

namespace {

template <typename Map, typename Vec, typename Key>
const typename Vec::value_type* lookup(const Map& index, const Vec& items,
                                       Key&& key) {
  auto it = index.find(std::string(key));
  if (it == index.end()) return nullptr;
  return &items[it->second];
}

}  // namespace

double CapacityProfile::fraction_at(double hour_of_day) const {
  for (const ProfileBand& band : bands) {
    if (hour_of_day >= band.start_h && hour_of_day < band.end_h) {
      return band.fraction;
    }
  }
  throw std::logic_error("CapacityProfile '" + name +
                         "' does not cover hour " + std::to_string(hour_of_day));
}

void Network::finalize() {
  node_index_.clear();
  arc_index_.clear();
  profile_index_.clear();
  path_index_.clear();
  od_index_.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) node_index_.emplace(nodes[i].id, i);
  for (std::size_t i = 0; i < arcs.size(); ++i) arc_index_.emplace(arcs[i].id, i);
  for (std::size_t i = 0; i < profiles.size(); ++i) profile_index_.emplace(profiles[i].name, i);
  for (std::size_t i = 0; i < od_pairs.size(); ++i) od_index_.emplace(od_pairs[i].id, i);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    Path& p = paths[i];
    path_index_.emplace(p.id, i);
    p.length_km = 0.0;
    p.free_flow_time_h = 0.0;
    for (const std::string& arc_id : p.arcs) {
      const Arc* arc = find_arc(arc_id);
      if (!arc) continue;  // reported by validate_network
      if (arc->kind == ArcKind::regular) p.length_km += arc->length_km;
      p.free_flow_time_h += arc->run_time_h;
    }
    p.reference_time_h = p.reference_speed_kmh > 0.0
                             ? p.length_km / p.reference_speed_kmh
                             : 0.0;
  }
}

const Node* Network::find_node(std::string_view id) const {
  return lookup(node_index_, nodes, id);
}
const Arc* Network::find_arc(std::string_view id) const {
  return lookup(arc_index_, arcs, id);
}
const CapacityProfile* Network::find_profile(std::string_view name) const {
  return lookup(profile_index_, profiles, name);
}
const Path* Network::find_path(std::string_view id) const {
  return lookup(path_index_, paths, id);
}
const OdRef* Network::find_od(std::string_view id) const {
  return lookup(od_index_, od_pairs, id);
}

std::vector<const Path*> Network::paths_for_od(std::string_view od_id) const {
  std::vector<const Path*> out;
  for (const Path& p : paths) {
    if (p.od == od_id) out.push_back(&p);
  }
  return out;
}

double Network::capacity_at(const Arc& arc, double t) const {
  if (t < 0.0) throw std::invalid_argument("capacity_at: negative time");
  if (arc.kind == ArcKind::connector) {
    return std::numeric_limits<double>::infinity();
  }
  const double base = arc.base_capacity();
  if (arc.profile.empty()) return base;
  const CapacityProfile* prof = find_profile(arc.profile);
  if (!prof) {
    throw std::invalid_argument("capacity_at: unknown profile '" + arc.profile + "'");
  }
  return base * prof->fraction_at(std::fmod(t, 24.0));
}

double Network::capacity_integral(const Arc& arc, double t0, double t1) const {
  if (t0 < 0.0 || t1 < t0) {
    throw std::invalid_argument("capacity_integral: bad interval");
  }
  if (arc.kind == ArcKind::connector) {
    return std::numeric_limits<double>::infinity();
  }
  const double base = arc.base_capacity();
  if (arc.profile.empty()) return base * (t1 - t0);
  const CapacityProfile* prof = find_profile(arc.profile);
  if (!prof) {
    throw std::invalid_argument("capacity_integral: unknown profile '" + arc.profile + "'");
  }
  double sum = 0.0;
  double t = t0;
  while (t < t1) {
    const double hour = std::fmod(t, 24.0);
    double band_end = 24.0;
    double fraction = 1.0;
    for (const ProfileBand& band : prof->bands) {
      if (hour >= band.start_h && hour < band.end_h) {
        band_end = band.end_h;
        fraction = band.fraction;
        break;
      }
    }
    const double next = std::min(t - hour + band_end, t1);
    sum += base * fraction * (next - t);
    t = next;
  }
  return sum;
}

namespace {

void check_profiles(const Network& net, std::vector<Violation>& out) {
  for (const CapacityProfile& prof : net.profiles) {
    if (prof.bands.empty()) {
      out.push_back({"profile", prof.name, "no bands"});
      continue;
    }
    double cursor = 0.0;
    bool broken = false;
    for (const ProfileBand& band : prof.bands) {
      if (band.start_h != cursor || band.end_h <= band.start_h) {
        out.push_back({"profile", prof.name, "bands do not partition [0,24)"});
        broken = true;
        break;
      }
      if (!(band.fraction > 0.0 && band.fraction <= 1.0)) {
        out.push_back({"profile", prof.name, "fraction outside (0,1]"});
        broken = true;
        break;
      }
      cursor = band.end_h;
    }
    if (!broken && cursor != 24.0) {
      out.push_back({"profile", prof.name, "bands do not cover [0,24)"});
    }
  }
}

void check_arcs(const Network& net, std::vector<Violation>& out) {
  for (const Arc& arc : net.arcs) {
    const Node* from = net.find_node(arc.from);
    const Node* to = net.find_node(arc.to);
    if (!from || !to) {
      out.push_back({"arc", arc.id, "endpoint node missing"});
      continue;
    }
    if (arc.length_km < 0.0) {
      out.push_back({"arc", arc.id, "negative length"});
    }
    if (arc.kind == ArcKind::connector) {
      if (arc.run_time_h != 0.0) {
        out.push_back({"arc", arc.id, "connector must have zero run time"});
      }
      const int centroid_ends = (from->kind == NodeKind::centroid ? 1 : 0) +
                                (to->kind == NodeKind::centroid ? 1 : 0);
      if (centroid_ends != 1) {
        out.push_back({"arc", arc.id, "connector must join one centroid to one regular node"});
      }
    } else {
      if (arc.run_time_h <= 0.0) {
        out.push_back({"arc", arc.id, "regular arc must have positive run time"});
      }
      if (arc.tracks_per_direction < 1) {
        out.push_back({"arc", arc.id, "tracks per direction below 1"});
      }
      if (from->kind == NodeKind::centroid || to->kind == NodeKind::centroid) {
        out.push_back({"arc", arc.id, "centroids attach only via connectors"});
      }
      if (!arc.profile.empty() && !net.find_profile(arc.profile)) {
        out.push_back({"arc", arc.id, "unknown capacity profile '" + arc.profile + "'"});
      }
    }
  }
}

void check_paths(const Network& net, std::vector<Violation>& out) {
  for (const Path& path : net.paths) {
    const OdRef* od = net.find_od(path.od);
    if (!od) {
      out.push_back({"path", path.id, "unknown OD pair '" + path.od + "'"});
      continue;
    }
    if (path.arcs.size() < 2) {
      out.push_back({"path", path.id, "needs at least origin and destination connectors"});
      continue;
    }
    bool arcs_ok = true;
    for (const std::string& arc_id : path.arcs) {
      if (!net.find_arc(arc_id)) {
        out.push_back({"path", path.id, "unknown arc '" + arc_id + "'"});
        arcs_ok = false;
      }
    }
    if (!arcs_ok) continue;
    std::size_t regular = 0;
    for (std::size_t i = 0; i + 1 < path.arcs.size(); ++i) {
      const Arc* a = net.find_arc(path.arcs[i]);
      const Arc* b = net.find_arc(path.arcs[i + 1]);
      if (a->to != b->from) {
        out.push_back({"path", path.id,
                       "arcs '" + a->id + "' and '" + b->id + "' are not contiguous"});
      }
    }
    for (const std::string& arc_id : path.arcs) {
      if (net.find_arc(arc_id)->kind == ArcKind::regular) ++regular;
    }
    const Arc* first = net.find_arc(path.arcs.front());
    const Arc* last = net.find_arc(path.arcs.back());
    if (first->kind != ArcKind::connector || first->from != od->origin) {
      out.push_back({"path", path.id, "must start with the origin connector"});
    }
    if (last->kind != ArcKind::connector || last->to != od->destination) {
      out.push_back({"path", path.id, "must end with the destination connector"});
    }
    if (regular == 0) {
      out.push_back({"path", path.id, "no regular arcs"});
    }
    if (path.reference_speed_kmh <= 0.0) {
      out.push_back({"path", path.id, "commercial reference speed not set"});
    }
  }
}

template <typename T, typename GetId>
void check_unique_ids(const std::vector<T>& items, const char* entity,
                      GetId get_id, std::vector<Violation>& out) {
  std::vector<std::string> seen;
  for (const T& item : items) {
    const std::string id = get_id(item);
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) {
      out.push_back({entity, id, "duplicate id"});
    } else {
      seen.push_back(id);
    }
  }
}

}  // namespace

std::vector<Violation> validate_network(const Network& net) {
  std::vector<Violation> out;
  check_unique_ids(net.nodes, "node", [](const Node& n) { return n.id; }, out);
  check_unique_ids(net.arcs, "arc", [](const Arc& a) { return a.id; }, out);
  check_unique_ids(net.profiles, "profile", [](const CapacityProfile& p) { return p.name; }, out);
  check_unique_ids(net.paths, "path", [](const Path& p) { return p.id; }, out);
  check_unique_ids(net.od_pairs, "od", [](const OdRef& o) { return o.id; }, out);
  for (const OdRef& od : net.od_pairs) {
    const Node* origin = net.find_node(od.origin);
    const Node* destination = net.find_node(od.destination);
    if (!origin || origin->kind != NodeKind::centroid) {
      out.push_back({"od", od.id, "origin must be an existing centroid"});
    }
    if (!destination || destination->kind != NodeKind::centroid) {
      out.push_back({"od", od.id, "destination must be an existing centroid"});
    }
  }
  check_profiles(net, out);
  check_arcs(net, out);
  check_paths(net, out);
  return out;
}

namespace {

// Label-correcting search over (cost, arc-id sequence) with lexicographic
// tie-break. Appending arcs never improves a label, so relaxation terminates.
struct RouteLabel {
  double cost = 0.0;
  std::vector<std::size_t> arc_seq;
};

bool seq_less(const Network& net, const std::vector<std::size_t>& a,
              const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](std::size_t x, std::size_t y) { return net.arcs[x].id < net.arcs[y].id; });
}

}  // namespace

Path min_cost_path(const Network& net, const OdRef& od) {
  std::unordered_map<std::string, RouteLabel> labels;
  labels.emplace(od.origin, RouteLabel{});

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
      const Arc& arc = net.arcs[i];
      auto from_it = labels.find(arc.from);
      if (from_it == labels.end()) continue;
      RouteLabel candidate = from_it->second;
      candidate.cost += arc.kind == ArcKind::regular ? arc.length_km : 0.0;
      candidate.arc_seq.push_back(i);
      auto to_it = labels.find(arc.to);
      const bool improves =
          to_it == labels.end() || candidate.cost < to_it->second.cost ||
          (candidate.cost == to_it->second.cost &&
           seq_less(net, candidate.arc_seq, to_it->second.arc_seq));
      if (improves) {
        labels[arc.to] = std::move(candidate);
        changed = true;
      }
    }
  }

  auto dest = labels.find(od.destination);
  if (dest == labels.end()) {
    throw DisconnectedOd("no route from '" + od.origin + "' to '" +
                         od.destination + "' for OD '" + od.id + "'");
  }
  Path path;
  path.id = "p_" + od.id;
  path.od = od.id;
  for (std::size_t idx : dest->second.arc_seq) {
    const Arc& arc = net.arcs[idx];
    path.arcs.push_back(arc.id);
    if (arc.kind == ArcKind::regular) path.length_km += arc.length_km;
    path.free_flow_time_h += arc.run_time_h;
  }
  return path;
}

CapacityProfile passenger_priority_profile(std::string name) {
  CapacityProfile prof;
  prof.name = std::move(name);
  prof.bands = {{0.0, 7.0, 1.0},
                {7.0, 10.0, 0.30},
                {10.0, 18.0, 0.15},
                {18.0, 24.0, 0.30}};
  return prof;
}

}  // namespace railtac
