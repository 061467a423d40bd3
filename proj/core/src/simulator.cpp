#include "railtac/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace railtac {

double dwell_time(double delta_f, double k_eff) {
  if (!(k_eff > 0.0)) {
    throw std::invalid_argument("dwell_time: capacity must be positive");
  }
  if (std::isinf(k_eff)) return 0.0;
  return delta_f / k_eff;
}

const PathResult* SimResult::find_path(const std::string& id) const {
  for (const PathResult& p : paths) {
    if (p.path_id == id) return &p;
  }
  return nullptr;
}

const OdResult* SimResult::find_od(const std::string& id) const {
  for (const OdResult& o : ods) {
    if (o.od_id == id) return &o;
  }
  return nullptr;
}

namespace {

struct Event {
  PacketState state = PacketState::state0;
  std::uint32_t path_idx = 0;
  std::uint32_t od_idx = 0;
  std::uint32_t arc_pos = 0;  // position within the path's arc list
  double fire_time = 0.0;
  double depart_time = 0.0;
  std::int64_t packet_id = -1;
  std::int64_t record_idx = -1;
  bool alive = true;
};

struct KeyAfter {
  bool operator()(const EventKey& a, const EventKey& b) const { return b < a; }
};

class Engine {
 public:
  Engine(const Network& net, const SimConfig& config, const DemandModel* demand,
         const TacScheme* scheme)
      : net_(net), config_(config), demand_(demand), scheme_(scheme) {
    if (!(config_.t_max_h > 0.0)) {
      throw std::invalid_argument("simulation horizon must be positive");
    }
    if (!(config_.delta_f_trains > 0.0)) {
      throw std::invalid_argument("packet size must be positive");
    }
    resolve_paths();
    queues_.resize(net_.arcs.size());
    busy_until_.assign(net_.arcs.size(), 0.0);
    tau_live_.resize(net_.paths.size());
    for (std::size_t i = 0; i < net_.paths.size(); ++i) {
      tau_live_[i] = net_.paths[i].reference_time_h;
      result_.paths.push_back(PathResult{net_.paths[i].id, {}, tau_live_[i]});
    }
    arc_result_idx_.assign(net_.arcs.size(), -1);
    for (std::size_t i = 0; i < net_.arcs.size(); ++i) {
      if (net_.arcs[i].kind == ArcKind::regular) {
        arc_result_idx_[i] = static_cast<std::int64_t>(result_.arcs.size());
        result_.arcs.push_back(ArcResult{net_.arcs[i].id, 0, {}, {}});
      }
    }
  }

  void seed_demand() {
    if (!(config_.kappa_trains_per_ton > 0.0)) {
      throw std::invalid_argument("kappa must be positive");
    }
    od_paths_.resize(demand_->od_pairs.size());
    for (std::size_t oi = 0; oi < demand_->od_pairs.size(); ++oi) {
      const ODPair& od = demand_->od_pairs[oi];
      if (od.demand_profile.empty() || !od.demand_profile.non_negative()) {
        throw std::invalid_argument("OD '" + od.id + "' has an unusable demand profile");
      }
      OdResult res;
      res.od_id = od.id;
      res.total_tons = od.demand_profile.integral(0.0, config_.t_max_h);
      res.road_tons = res.total_tons;  // all freight starts on road
      result_.ods.push_back(res);
      for (std::size_t pi = 0; pi < net_.paths.size(); ++pi) {
        if (net_.paths[pi].od == od.id) {
          od_paths_[oi].push_back(static_cast<std::uint32_t>(pi));
        }
      }
    }
    for (std::size_t oi = 0; oi < demand_->od_pairs.size(); ++oi) {
      for (std::uint32_t pi : od_paths_[oi]) {
        Event ev;
        ev.state = PacketState::state0;
        ev.path_idx = pi;
        ev.od_idx = static_cast<std::uint32_t>(oi);
        ev.fire_time = 0.0;
        add_event(ev);
      }
    }
  }

  void seed_releases(const ReleasePlan& plan) {
    for (const auto& [path_id, times] : plan.releases) {
      const Path* path = net_.find_path(path_id);
      if (!path) {
        throw std::invalid_argument("release plan names unknown path '" + path_id + "'");
      }
      const auto pi = static_cast<std::uint32_t>(path - net_.paths.data());
      for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("release time before horizon start");
        Event ev;
        ev.state = PacketState::state1;
        ev.path_idx = pi;
        ev.fire_time = t;
        ev.depart_time = t;
        ev.packet_id = static_cast<std::int64_t>(++result_.packets_created);
        PathResult& pr = result_.paths[pi];
        PacketRecord rec;
        rec.packet_id = ev.packet_id;
        rec.departure_h = t;
        rec.tau_estimate_at_departure_h = tau_live_[pi];
        ev.record_idx = static_cast<std::int64_t>(pr.packets.size());
        pr.packets.push_back(rec);
        add_event(ev);
      }
    }
  }

  SimResult run_loop() {
    while (!heap_.empty()) {
      const EventKey key = heap_.top();
      heap_.pop();
      Event& ev = events_[key.event_id];
      if (!ev.alive || ev.fire_time != key.fire_time) continue;  // superseded key
      if (key.fire_time > config_.t_max_h) break;  // clock past the horizon
      clock_ = key.fire_time;
      ++result_.events_processed;
      if (ev.state == PacketState::state0) {
        process_state0(key.event_id);
      } else {
        process_state1(key.event_id);
      }
    }
    result_.events_created = events_.size();
    result_.clock_end_h = clock_;
    return std::move(result_);
  }

 private:
  void resolve_paths() {
    path_arcs_.resize(net_.paths.size());
    for (std::size_t pi = 0; pi < net_.paths.size(); ++pi) {
      const Path& path = net_.paths[pi];
      if (path.arcs.size() < 2) {
        throw std::invalid_argument("path '" + path.id + "' is malformed");
      }
      for (const std::string& arc_id : path.arcs) {
        const Arc* arc = net_.find_arc(arc_id);
        if (!arc) {
          throw std::invalid_argument("path '" + path.id + "' references unknown arc '" +
                                      arc_id + "'");
        }
        path_arcs_[pi].push_back(static_cast<std::uint32_t>(arc - net_.arcs.data()));
      }
      for (std::size_t i = 0; i + 1 < path_arcs_[pi].size(); ++i) {
        if (net_.arcs[path_arcs_[pi][i]].to != net_.arcs[path_arcs_[pi][i + 1]].from) {
          throw std::invalid_argument("path '" + path.id + "' is not contiguous");
        }
      }
    }
  }

  std::uint64_t add_event(const Event& ev) {
    const auto id = static_cast<std::uint64_t>(events_.size());
    events_.push_back(ev);
    queues_[path_arcs_[ev.path_idx][ev.arc_pos]].push_back(id);
    heap_.push(EventKey{ev.fire_time, id});
    return id;
  }

  void reschedule(std::uint64_t id, double fire_time) {
    events_[id].fire_time = fire_time;
    heap_.push(EventKey{fire_time, id});
  }

  void drop_from_queue(std::uint32_t arc_idx, std::uint64_t id) {
    auto& q = queues_[arc_idx];
    const auto it = std::find(q.begin(), q.end(), id);
    if (it == q.end()) {
      throw std::logic_error("event left a queue it was not in");
    }
    q.erase(it);
  }

  // State and packet id as seen when the event fired, not after mutation.
  void record_trace(std::uint64_t id, PacketState state, std::int64_t packet_id,
                    std::uint32_t arc_idx) {
    if (!config_.record_trace) return;
    result_.trace.push_back(TraceRow{id, packet_id, state,
                                     net_.arcs[arc_idx].id, clock_});
  }

  // Latent event: accumulate demand at the entry connector until one packet
  // is filled, then load it and spawn the next latent event at that instant.
  void process_state0(std::uint64_t id) {
    Event& ev = events_[id];
    const std::uint32_t origin_arc = path_arcs_[ev.path_idx][0];
    const ODPair& od = demand_->od_pairs[ev.od_idx];
    const auto& siblings = od_paths_[ev.od_idx];

    std::vector<double> u(siblings.size());
    double v_road = 0.0;
    std::size_t own = 0;
    for (std::size_t i = 0; i < siblings.size(); ++i) {
      const Path& path = net_.paths[siblings[i]];
      if (siblings[i] == ev.path_idx) own = i;
      const double lambda = lambda_at(*scheme_, path, clock_,
                                      demand_->cost.rail_fixed_cost_per_tkm);
      const RailCostBreakdown cost =
          rail_cost(path, tau_live_[siblings[i]], lambda, demand_->cost);
      const Utilities ut = utilities(od, cost, demand_->logit);
      u[i] = ut.u_rail;
      v_road = ut.v_road;
    }
    const double share = path_shares(v_road, u)[own];

    const auto t_load = next_entry_time(od, share, clock_, config_.delta_f_trains,
                                        config_.kappa_trains_per_ton);
    if (!t_load || *t_load > config_.t_max_h) {
      // The train is never filled within the horizon; the chain ends here.
      ev.alive = false;
      record_trace(id, PacketState::state0, -1, origin_arc);
      drop_from_queue(origin_arc, id);
      return;
    }

    // Next latent event fires the moment this packet enters the network.
    Event successor;
    successor.state = PacketState::state0;
    successor.path_idx = ev.path_idx;
    successor.od_idx = ev.od_idx;
    successor.fire_time = *t_load;
    add_event(successor);

    Event& self = events_[id];  // add_event may reallocate
    self.state = PacketState::state1;
    self.packet_id = static_cast<std::int64_t>(++result_.packets_created);
    self.depart_time = *t_load;
    reschedule(id, *t_load);

    const Path& path = net_.paths[self.path_idx];
    PacketRecord rec;
    rec.packet_id = self.packet_id;
    rec.departure_h = *t_load;
    rec.lambda_at_departure =
        lambda_at(*scheme_, path, *t_load, demand_->cost.rail_fixed_cost_per_tkm);
    rec.tau_estimate_at_departure_h = tau_live_[self.path_idx];
    PathResult& pr = result_.paths[self.path_idx];
    self.record_idx = static_cast<std::int64_t>(pr.packets.size());
    pr.packets.push_back(rec);

    const double tons = config_.tons_per_packet();
    OdResult& od_res = result_.ods[self.od_idx];
    od_res.rail_tons += tons;
    od_res.road_tons -= tons;
    record_trace(id, PacketState::state0, self.packet_id, origin_arc);
  }

  // Loaded packet: either it has reached the destination connector, or it
  // enters the running section of its current arc, holding queue peers back
  // for one dwell time, and joins the next arc's queue.
  void process_state1(std::uint64_t id) {
    Event& ev = events_[id];
    const auto& arcs_on_path = path_arcs_[ev.path_idx];
    const std::uint32_t arc_idx = arcs_on_path[ev.arc_pos];
    record_trace(id, PacketState::state1, ev.packet_id, arc_idx);

    if (ev.arc_pos + 1 == arcs_on_path.size()) {
      ev.alive = false;
      drop_from_queue(arc_idx, id);
      tau_live_[ev.path_idx] = clock_ - ev.depart_time;
      PathResult& pr = result_.paths[ev.path_idx];
      pr.live_travel_time_h = tau_live_[ev.path_idx];
      PacketRecord& rec = pr.packets[static_cast<std::size_t>(ev.record_idx)];
      rec.completed = true;
      rec.completion_h = clock_;
      rec.realized_travel_time_h = clock_ - rec.departure_h;
      if (demand_) {
        rec.revenue_eur = packet_revenue_eur(
            rec.lambda_at_departure, rec.realized_travel_time_h,
            net_.paths[ev.path_idx].length_km, config_.tons_per_packet());
      }
      return;
    }

    const Arc& arc = net_.arcs[arc_idx];
    drop_from_queue(arc_idx, id);
    if (arc.kind == ArcKind::regular) {
      ArcResult& ar = result_.arcs[static_cast<std::size_t>(arc_result_idx_[arc_idx])];
      ++ar.total_entries;
      const auto day = static_cast<std::size_t>(clock_ / 24.0);
      if (ar.entries_per_day.size() <= day) ar.entries_per_day.resize(day + 1, 0);
      ++ar.entries_per_day[day];
      if (config_.record_trace) ar.entry_times_h.push_back(clock_);
    }

    // Capacity sampled at the gate-opening instant; peers queued behind hold
    // until the gate frees again.
    const double dwell = dwell_time(config_.delta_f_trains, net_.capacity_at(arc, clock_));
    if (dwell > 0.0) {
      const double gate_free = clock_ + dwell;
      busy_until_[arc_idx] = std::max(busy_until_[arc_idx], gate_free);
      for (std::uint64_t peer : queues_[arc_idx]) {
        if (events_[peer].fire_time < gate_free) reschedule(peer, gate_free);
      }
    }

    ev.arc_pos += 1;
    const std::uint32_t next_arc = arcs_on_path[ev.arc_pos];
    // A gate opened before this arrival may still be busy.
    const double arrival =
        std::max(clock_ + arc.run_time_h, busy_until_[next_arc]);
    queues_[next_arc].push_back(id);
    reschedule(id, arrival);
  }

  const Network& net_;
  const SimConfig& config_;
  const DemandModel* demand_ = nullptr;
  const TacScheme* scheme_ = nullptr;

  std::vector<std::vector<std::uint32_t>> path_arcs_;
  std::vector<std::vector<std::uint32_t>> od_paths_;
  std::vector<double> tau_live_;
  std::vector<Event> events_;
  std::priority_queue<EventKey, std::vector<EventKey>, KeyAfter> heap_;
  std::vector<std::vector<std::uint64_t>> queues_;
  std::vector<double> busy_until_;
  std::vector<std::int64_t> arc_result_idx_;
  double clock_ = 0.0;
  SimResult result_;
};

}  // namespace

SimResult run(const Network& net, const DemandModel& demand,
              const TacScheme& scheme, const SimConfig& config) {
  scheme.validate();
  Engine engine(net, config, &demand, &scheme);
  engine.seed_demand();
  return engine.run_loop();
}

SimResult run_releases(const Network& net, const ReleasePlan& plan,
                       const SimConfig& config) {
  Engine engine(net, config, nullptr, nullptr);
  engine.seed_releases(plan);
  return engine.run_loop();
}

}  // namespace railtac
