#include "dfarpl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "dfarpl/radio.hpp"

namespace dfarpl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double hash_uniform(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(splitmix64(a) ^ (b * 0xD6E8FEB86659FD93ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

struct MsgInstance {
  MsgKind kind = MsgKind::Data;
  NodeId origin = 0;
  NodeId final_dst = 0;
  std::uint32_t size_bytes = 0;
  double created_at = 0.0;
  NodeId accused = 0;       // Warning payload
  double probe_sent = 0.0;  // echoed in Ack for RTT measurement
  bool pdr_counted = false; // legitimate Data, counts toward PDR
  bool finalized = false;
  std::uint32_t hops = 0;
};

enum class EvKind { Cbr, Flood, Hop, Probe, Window };

struct Event {
  double at = 0.0;
  std::uint64_t seq = 0;
  EvKind kind = EvKind::Hop;
  std::uint64_t msg = 0;
  NodeId a = 0; // tick node / hop sender
  NodeId b = 0; // hop receiver
};

struct EventAfter {
  bool operator()(const Event& x, const Event& y) const {
    if (x.at != y.at) return x.at > y.at;
    return x.seq > y.seq;
  }
};

class Runner {
 public:
  Runner(const SimConfig& cfg, std::vector<ThingState> nodes, bool trace)
      : cfg_(cfg),
        rc_(RadioConstants::from(cfg)),
        nodes_(std::move(nodes)),
        rtt_(cfg.rtt_prior),
        collect_trace_(trace) {
    jitter_rngs_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      jitter_rngs_.emplace_back(splitmix64(cfg_.rng_seed ^ (i + 1)));
  }

  RunResult run();

 private:
  // --- setup -------------------------------------------------------------
  void setup_phase();
  void rebuild_dodag();
  void refresh_clusters();

  // --- event handlers ----------------------------------------------------
  void on_cbr(NodeId n, double t);
  void on_flood(NodeId n, double t);
  void on_probe(NodeId n, double t);
  void on_hop(std::uint64_t mid, NodeId from, NodeId to, double t);
  void on_window(double t);

  // --- messaging ---------------------------------------------------------
  std::uint64_t create_msg(MsgKind k, NodeId origin, NodeId dst,
                           std::uint32_t bytes, double t, bool pdr);
  void transmit(std::uint64_t mid, NodeId from, NodeId to, double t);
  void finalize_deliver(std::uint64_t mid, double t);
  void finalize_drop(std::uint64_t mid, double t, const char* reason);

  // --- detection / quarantine -------------------------------------------
  void run_detector(NodeId collector, double t);
  void supervision_verdicts(double t);
  double supervision_margin(NodeId id) const;
  void apply_detention(NodeId accused, double t, const char* transition);
  void broadcast_from_root(NodeId about, double t, bool release);
  void rotation_checks(double t, bool force_for_quarantined_heads);

  // --- helpers -----------------------------------------------------------
  double bits(const MsgInstance& m) const { return 8.0 * m.size_bytes; }
  double jfactor(NodeId n) {
    if (cfg_.jitter <= 0.0) return 1.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return 1.0 + cfg_.jitter * (2.0 * u(jitter_rngs_[n]) - 1.0);
  }
  void schedule(double at, EvKind k, std::uint64_t msg, NodeId a, NodeId b) {
    queue_.push(Event{at, seq_++, k, msg, a, b});
  }
  void trace(double at, const char* kind, std::int64_t src, std::int64_t dst,
             std::string info) {
    if (collect_trace_)
      result_.trace.push_back({at, kind, src, dst, std::move(info)});
  }
  double service_time() const { return 1.0 / cfg_.head_capacity; }
  bool is_collector(NodeId n) const {
    return n == kRootId || nodes_[n].role == Role::ClusterHead;
  }
  void debit_tx(ThingState& s, double j) {
    s.e_consumed += j;
    result_.energy.add_tx(j);
    if (s.e_residual() <= 0.0) s.dead = true;
  }
  void debit_rx(ThingState& s, double j) {
    s.e_consumed += j;
    result_.energy.add_rx(j);
    if (s.e_residual() <= 0.0) s.dead = true;
  }

  SimConfig cfg_;
  RadioConstants rc_;
  std::vector<ThingState> nodes_;
  std::vector<ClusterAssignment> clusters_;
  DetentionTable table_;
  RttEstimate rtt_;
  bool collect_trace_;

  std::vector<std::mt19937_64> jitter_rngs_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
  std::uint64_t seq_ = 0;
  std::vector<MsgInstance> msgs_;

  // Per-collector window ledgers, keyed by message origin.
  std::map<NodeId, std::map<NodeId, std::uint64_t>> window_counts_;
  std::map<NodeId, double> busy_until_;
  std::set<NodeId> probe_streams_;
  std::set<NodeId> accused_ever_;
  std::vector<NodeId> pending_warnings_; // accuser head died before sending

  RunResult result_;
};

void Runner::refresh_clusters() {
  for (auto& c : clusters_) c.members.clear();
  for (const auto& n : nodes_) {
    if (n.id == kRootId || !n.cluster_head || *n.cluster_head == n.id) continue;
    for (auto& c : clusters_)
      if (c.head == *n.cluster_head) {
        c.members.insert(n.id);
        break;
      }
  }
}

void Runner::rebuild_dodag() {
  std::vector<NodeId> heads;
  for (const auto& c : clusters_)
    if (nodes_[c.head].alive()) heads.push_back(c.head);
  std::erase_if(clusters_,
                [this](const ClusterAssignment& c) { return !nodes_[c.head].alive(); });
  build_dodag(heads, nodes_, cfg_, &result_.energy);
  refresh_clusters();
}

void Runner::setup_phase() {
  auto hello = collect_hello(nodes_, cfg_, &result_.energy);
  auto grid = AreaGrid::make(cfg_);
  auto cells = shortlist_candidates(hello, grid, cfg_.candidates_per_area, cfg_);

  for (std::uint32_t c = 0; c < cells.size(); ++c) {
    if (cells[c].empty()) continue;
    NodeId head =
        elect_cluster_head(cells[c], cfg_.w_energy, cfg_.w_rssi, cfg_.w_distance);
    clusters_.push_back({head, {}, c});
  }
  std::sort(clusters_.begin(), clusters_.end(),
            [](const auto& a, const auto& b) { return a.head < b.head; });

  std::vector<NodeId> heads;
  for (const auto& c : clusters_) heads.push_back(c.head);
  result_.initial_heads = heads;
  result_.dodag = build_dodag(heads, nodes_, cfg_, &result_.energy);
  refresh_clusters();
  result_.dodag_edges = dump_edges(nodes_);

  // Steady-state schedule.
  for (const auto& n : nodes_) {
    if (n.id == kRootId) continue;
    if (n.attacker) {
      double t0 = cfg_.flood_start + cfg_.flood_interval * jfactor(n.id);
      if (t0 <= cfg_.sim_duration) schedule(t0, EvKind::Flood, 0, n.id, 0);
    } else {
      double t0 = cfg_.cbr_interval * jfactor(n.id);
      if (t0 <= cfg_.sim_duration) schedule(t0, EvKind::Cbr, 0, n.id, 0);
    }
  }
  for (NodeId h : heads) {
    probe_streams_.insert(h);
    schedule(cfg_.probe_interval, EvKind::Probe, 0, h, 0);
  }
  if (cfg_.detection_window <= cfg_.sim_duration)
    schedule(cfg_.detection_window, EvKind::Window, 0, 0, 0);
}

std::uint64_t Runner::create_msg(MsgKind k, NodeId origin, NodeId dst,
                                 std::uint32_t bytes, double t, bool pdr) {
  MsgInstance m;
  m.kind = k;
  m.origin = origin;
  m.final_dst = dst;
  m.size_bytes = bytes;
  m.created_at = t;
  m.pdr_counted = pdr;
  msgs_.push_back(m);
  ++result_.msgs_created;
  if (pdr) ++result_.metrics.delivery.sent;
  return msgs_.size() - 1;
}

void Runner::transmit(std::uint64_t mid, NodeId from, NodeId to, double t) {
  auto& m = msgs_[mid];
  auto& s = nodes_[from];
  if (!s.alive()) {
    finalize_drop(mid, t, "dead_tx");
    return;
  }
  double d = distance(s.pos, nodes_[to].pos);
  debit_tx(s, tx_energy(bits(m), d, rc_));

  // Heads attach to the root over a logical overlay link; everything
  // else is range gated.
  bool overlay = (from == kRootId || to == kRootId);
  if (!overlay && d > cfg_.tx_range) {
    finalize_drop(mid, t, "range");
    return;
  }
  if (cfg_.loss_prob > 0.0 &&
      hash_uniform(cfg_.rng_seed ^ mid, m.hops) < cfg_.loss_prob) {
    finalize_drop(mid, t, "loss");
    return;
  }
  ++m.hops;
  schedule(t + d / cfg_.prop_speed + cfg_.hop_proc_delay, EvKind::Hop, mid,
           from, to);
}

void Runner::finalize_deliver(std::uint64_t mid, double t) {
  auto& m = msgs_[mid];
  m.finalized = true;
  ++result_.msgs_delivered;
  if (m.pdr_counted) ++result_.metrics.delivery.received;
  trace(t, "deliver", m.origin, m.final_dst, to_string(m.kind));
}

void Runner::finalize_drop(std::uint64_t mid, double t, const char* reason) {
  auto& m = msgs_[mid];
  if (m.finalized) return;
  m.finalized = true;
  ++result_.msgs_dropped;
  trace(t, "drop", m.origin, m.final_dst, reason);
}

void Runner::on_cbr(NodeId n, double t) {
  auto& s = nodes_[n];
  if (!s.alive()) return;
  if (s.rank) {
    auto mid = create_msg(MsgKind::Data, n, kRootId, cfg_.packet_size, t, true);
    trace(t, "send", n, kRootId, "data");
    transmit(mid, n, *s.parent, t);
  } else {
    // no route: counted as a failed send, never enters the channel
    auto mid = create_msg(MsgKind::Data, n, kRootId, cfg_.packet_size, t, true);
    trace(t, "send", n, kRootId, "data");
    finalize_drop(mid, t, "no_route");
  }
  double next = t + cfg_.cbr_interval * jfactor(n);
  if (next <= cfg_.sim_duration) schedule(next, EvKind::Cbr, 0, n, 0);
}

void Runner::on_flood(NodeId n, double t) {
  auto& s = nodes_[n];
  if (!s.alive()) return;
  double until = std::min(cfg_.sim_duration, cfg_.effective_flood_until());
  if (t <= until && s.rank) {
    NodeId target = (*s.rank == 1) ? kRootId : *s.cluster_head;
    auto mid = create_msg(MsgKind::Data, n, target, cfg_.packet_size, t, false);
    trace(t, "send", n, target, "flood");
    transmit(mid, n, *s.parent, t);
  }
  double next = t + cfg_.flood_interval * jfactor(n);
  if (next <= until) schedule(next, EvKind::Flood, 0, n, 0);
}

void Runner::on_probe(NodeId n, double t) {
  auto& s = nodes_[n];
  if (!s.alive() || s.role != Role::ClusterHead) {
    probe_streams_.erase(n);
    return;
  }
  if (!table_.is_quarantined(n)) {
    auto mid = create_msg(MsgKind::Probe, n, kRootId, cfg_.ctrl_packet_size, t,
                          false);
    msgs_[mid].probe_sent = t;
    transmit(mid, n, kRootId, t);
  }
  double next = t + cfg_.probe_interval;
  if (next <= cfg_.sim_duration) schedule(next, EvKind::Probe, 0, n, 0);
}

void Runner::on_hop(std::uint64_t mid, NodeId from, NodeId to, double t) {
  (void)from;
  auto& m = msgs_[mid];
  auto& r = nodes_[to];
  if (!r.alive()) {
    finalize_drop(mid, t, "dead_rx");
    return;
  }

  // Heads and the root observe every radio arrival, including ones they
  // go on to reject; the ledger counts arrivals.
  if (is_collector(to) && m.kind == MsgKind::Data && m.origin != to)
    ++window_counts_[to][m.origin];

  if (m.origin != to && table_.rejects(m.origin)) {
    finalize_drop(mid, t, "detained");
    return;
  }

  bool head_data = m.kind == MsgKind::Data && to != kRootId && is_collector(to);
  if (head_data) {
    double backlog = busy_until_.count(to) ? busy_until_[to] - t : 0.0;
    if (backlog > cfg_.head_queue * service_time()) {
      finalize_drop(mid, t, "overload");
      return;
    }
  }

  debit_rx(r, rx_energy(bits(m), rc_));

  double depart = t;
  if (head_data) {
    double busy = busy_until_.count(to) ? busy_until_[to] : t;
    depart = std::max(busy, t) + service_time();
    busy_until_[to] = depart;
  }

  if (to == m.final_dst) {
    finalize_deliver(mid, t);
    // copy out before create_msg can reallocate msgs_
    MsgKind kind = m.kind;
    NodeId origin = m.origin;
    NodeId accused = m.accused;
    double probe_sent = m.probe_sent;
    if (to == kRootId) {
      if (kind == MsgKind::Probe) {
        auto aid = create_msg(MsgKind::Ack, kRootId, origin,
                              cfg_.ctrl_packet_size, t, false);
        msgs_[aid].probe_sent = probe_sent;
        transmit(aid, kRootId, origin, t);
      } else if (kind == MsgKind::Warning) {
        apply_detention(accused, t, "detain");
      }
    } else if (kind == MsgKind::Ack) {
      rtt_.add_sample(t - probe_sent);
    }
    return;
  }

  // forward upward
  if (!r.parent || !nodes_[*r.parent].alive()) {
    // dead parent: local repair via a full rebuild (rare)
    rebuild_dodag();
    trace(t, "repair", to, -1, "parent_dead");
  }
  if (!r.rank || !r.parent) {
    finalize_drop(mid, t, "no_route");
    return;
  }
  transmit(mid, to, *r.parent, depart);
}

void Runner::run_detector(NodeId collector, double t) {
  auto it = window_counts_.find(collector);
  std::vector<MemberLedgerEntry> ledger;
  if (it != window_counts_.end()) {
    for (const auto& [origin, count] : it->second) {
      if (table_.is_quarantined(origin)) continue;
      if (!nodes_[origin].alive()) continue;
      ledger.push_back({origin, count, collector, MsgKind::Data});
    }
  }
  if (ledger.empty()) return;

  DetectionParams p{cfg_.f0, cfg_.alpha, cfg_.n_max, cfg_.flag_factor};
  auto accused = detect(ledger, p);

  if (collect_trace_) {
    auto scores = score_members(ledger, p);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      result_.detections.push_back({t, collector, scores[i].member,
                                    ledger[i].n_t, scores[i].pheromone,
                                    scores[i].fitness, scores[i].probability,
                                    accused && *accused == scores[i].member});
    }
  }

  if (!accused) return;
  trace(t, "accuse", collector, *accused, "");
  if (collector == kRootId) {
    apply_detention(*accused, t, "detain");
  } else if (nodes_[collector].alive()) {
    auto mid = create_msg(MsgKind::Warning, collector, kRootId,
                          cfg_.ctrl_packet_size, t, false);
    msgs_[mid].accused = *accused;
    transmit(mid, collector, kRootId, t);
  } else {
    pending_warnings_.push_back(*accused); // retried once next window
  }
}

double Runner::supervision_margin(NodeId id) const {
  DetectionParams p{cfg_.f0, cfg_.alpha, cfg_.n_max, cfg_.flag_factor};
  for (const auto& [collector, counts] : window_counts_) {
    if (!counts.count(id)) continue;
    std::vector<MemberLedgerEntry> ledger;
    for (const auto& [origin, count] : counts) {
      if (origin != id && table_.rejects(origin)) continue;
      ledger.push_back({origin, count, collector, MsgKind::Data});
    }
    auto scores = score_members(ledger, p);
    double threshold = p.flag_factor / static_cast<double>(ledger.size());
    for (const auto& s : scores)
      if (s.member == id) return s.probability - threshold; // >0 means trigger
    return -1.0;
  }
  return -1.0; // silent all window: operates as a normal thing
}

void Runner::supervision_verdicts(double t) {
  for (NodeId id : table_.supervised()) {
    if (!nodes_[id].alive()) {
      table_.drop(id);
      result_.detentions.push_back({t, id, 0.0, "drop"});
      continue;
    }
    if (supervision_margin(id) > 0.0) {
      apply_detention(id, t, "redetain");
    } else {
      table_.release(id);
      result_.detentions.push_back({t, id, 0.0, "release"});
      trace(t, "release", kRootId, id, "");
      broadcast_from_root(id, t, true);
    }
  }
}

void Runner::apply_detention(NodeId accused, double t, const char* transition) {
  if (accused == kRootId) return;
  auto& entry = table_.detain(accused, t, rtt_);
  accused_ever_.insert(accused);
  result_.detentions.push_back({t, accused, entry.theta, transition});
  trace(t, "detain", kRootId, accused, transition);
  broadcast_from_root(accused, t, false);

  // A detained head cannot keep its cluster: rotate immediately.
  if (nodes_[accused].role == Role::ClusterHead)
    rotation_checks(t, /*force_for_quarantined_heads=*/true);
}

void Runner::broadcast_from_root(NodeId about, double t, bool release) {
  if (!nodes_[kRootId].alive()) return;
  for (const auto& c : clusters_) {
    if (c.head == about || !nodes_[c.head].alive()) continue;
    auto mid = create_msg(MsgKind::Warning, kRootId, c.head,
                          cfg_.ctrl_packet_size, t, false);
    msgs_[mid].accused = about;
    (void)release;
    transmit(mid, kRootId, c.head, t);
  }
}

void Runner::rotation_checks(double t, bool force_for_quarantined_heads) {
  bool changed = false;
  auto barred = table_.quarantined_ids();
  for (auto& c : clusters_) {
    bool due = rotation_due(c, nodes_, cfg_.ch_energy_floor);
    if (!due && table_.is_quarantined(c.head)) due = force_for_quarantined_heads;
    if (!due) continue;

    NodeId old_head = c.head;
    if (rotate_cluster_head(c, nodes_, barred, cfg_.ch_energy_floor)) {
      if (nodes_[old_head].alive()) nodes_[old_head].role = Role::Member;
      trace(t, "rotate", old_head, c.head, "");
      if (!probe_streams_.count(c.head)) {
        probe_streams_.insert(c.head);
        double next = t + cfg_.probe_interval;
        if (next <= cfg_.sim_duration) schedule(next, EvKind::Probe, 0, c.head, 0);
      }
      changed = true;
    } else {
      if (nodes_[old_head].alive()) nodes_[old_head].role = Role::Member;
      trace(t, "rotate", old_head, -1, "dissolved");
      c.members.clear();
      changed = true;
      c.area_index = std::numeric_limits<std::uint32_t>::max(); // removed below
    }
  }
  if (changed) {
    std::erase_if(clusters_, [](const ClusterAssignment& c) {
      return c.area_index == std::numeric_limits<std::uint32_t>::max();
    });
    rebuild_dodag();
  }
}

void Runner::on_window(double t) {
  if (cfg_.detection_enabled) {
    supervision_verdicts(t);
    for (NodeId id : table_.begin_supervision(t)) {
      result_.detentions.push_back({t, id, 0.0, "supervise"});
      trace(t, "supervise", kRootId, id, "");
    }

    // retries from heads that died before their warning got out
    auto pending = std::move(pending_warnings_);
    pending_warnings_.clear();
    for (NodeId accused : pending) apply_detention(accused, t, "detain");

    std::vector<NodeId> collectors{kRootId};
    for (const auto& c : clusters_)
      if (nodes_[c.head].alive()) collectors.push_back(c.head);
    for (NodeId c : collectors) run_detector(c, t);
  }

  rotation_checks(t, /*force_for_quarantined_heads=*/true);
  window_counts_.clear();

  double next = t + cfg_.detection_window;
  if (next <= cfg_.sim_duration) schedule(next, EvKind::Window, 0, 0, 0);
}

RunResult Runner::run() {
  setup_phase();

  // New traffic stops at sim_duration; in-flight hops drain so every
  // created message resolves to delivered or dropped.
  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    switch (ev.kind) {
      case EvKind::Cbr:    on_cbr(ev.a, ev.at); break;
      case EvKind::Flood:  on_flood(ev.a, ev.at); break;
      case EvKind::Probe:  on_probe(ev.a, ev.at); break;
      case EvKind::Hop:    on_hop(ev.msg, ev.a, ev.b, ev.at); break;
      case EvKind::Window: on_window(ev.at); break;
    }
  }

  // Confusion counts at node granularity: accused at least once.
  auto& c = result_.metrics.confusion;
  for (const auto& n : nodes_) {
    if (n.id == kRootId) continue;
    bool accused = accused_ever_.count(n.id) != 0;
    if (n.attacker)
      accused ? ++c.tp : ++c.fn;
    else
      accused ? ++c.fp : ++c.tn;
  }
  result_.metrics = RunMetrics::from(c, result_.metrics.delivery);

  for (const auto& n : nodes_) result_.node_energy_consumed += n.e_consumed;
  result_.measured_rtt = rtt_.value();
  result_.rtt_samples = rtt_.samples();
  result_.final_nodes = std::move(nodes_);
  return std::move(result_);
}

} // namespace

std::vector<ThingState> build_topology(const SimConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> ux(0.0, cfg.area_width);
  std::uniform_real_distribution<double> uy(0.0, cfg.area_height);

  std::vector<ThingState> nodes(cfg.n_nodes);
  for (std::uint32_t i = 0; i < cfg.n_nodes; ++i) {
    auto& n = nodes[i];
    n.id = i;
    n.e_initial = cfg.initial_energy;
    if (i == kRootId) {
      n.role = Role::Root;
      n.pos = {cfg.area_width / 2.0, cfg.area_height / 2.0};
    } else {
      n.pos = {ux(rng), uy(rng)};
    }
  }

  // floor(ratio*(N-1)) attackers, uniform without replacement over the
  // non-root nodes; the root is never an attacker.
  auto n_attackers = static_cast<std::uint32_t>(
      cfg.intruder_ratio * static_cast<double>(cfg.n_nodes - 1));
  std::vector<NodeId> pool;
  for (std::uint32_t i = 1; i < cfg.n_nodes; ++i) pool.push_back(i);
  for (std::uint32_t k = 0; k < n_attackers; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
    std::swap(pool[k], pool[pick(rng)]);
    nodes[pool[k]].attacker = true;
  }
  return nodes;
}

Simulation::Simulation(SimConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
}

void Simulation::set_topology(std::vector<ThingState> nodes) {
  preset_nodes_ = std::move(nodes);
  has_preset_ = true;
}

RunResult Simulation::run() {
  auto nodes = has_preset_ ? preset_nodes_ : build_topology(cfg_);
  Runner r(cfg_, std::move(nodes), collect_trace_);
  return r.run();
}

} // namespace dfarpl
