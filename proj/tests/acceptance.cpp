// Acceptance suite: ten end-to-end checks over the whole stack. Each
// criterion prints one PASS/FAIL line; the process exits nonzero if any
// fails. Expected values are recomputed in place with independent
// arithmetic (long double formulas, brute-force searches, BFS oracles)
// rather than copied from the implementation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dfarpl/aco.hpp"
#include "dfarpl/clustering.hpp"
#include "dfarpl/dodag.hpp"
#include "dfarpl/engine.hpp"
#include "dfarpl/metrics.hpp"
#include "dfarpl/quarantine.hpp"
#include "dfarpl/radio.hpp"
#include "dfarpl/report.hpp"
#include "dfarpl/sweep.hpp"

using namespace dfarpl;

namespace {

int g_failures = 0;

void report(int n, const char* desc, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, desc);
  if (!ok) ++g_failures;
}

bool close_rel(double got, double want, double tol = 1e-9) {
  double scale = std::max(1.0, std::fabs(want));
  return std::fabs(got - want) <= tol * scale;
}

// ---------------------------------------------------------------- 1 --

bool formula_oracles() {
  bool ok = true;
  RadioConstants rc; // defaults: 50e-9, 100e-12, gains 1, 2.4 GHz, 3e8

  // energy model, recomputed with long double arithmetic
  {
    long double k = 8.0L * 512.0L, d = 37.5L;
    long double tx = k * 50e-9L + k * 100e-12L * d * d;
    ok = ok && close_rel(tx_energy(8.0 * 512.0, 37.5, rc),
                         static_cast<double>(tx));
    ok = ok && close_rel(rx_energy(8.0 * 512.0, rc),
                         static_cast<double>(k * 50e-9L));
  }
  // friis ratio in dB
  {
    long double lambda = 3e8L / 2.4e9L;
    long double a = lambda / (4.0L * 3.141592653589793238462643L * 25.0L);
    long double db = 10.0L * std::log10(static_cast<double>(a * a));
    ok = ok && close_rel(rssi(25.0, rc), static_cast<double>(db));
  }
  // detector chain at a hand-picked point
  {
    long double f = 1.0L * (1.0L - 1.0L * 30.0L / 50.0L); // 0.4
    ok = ok && close_rel(pheromone(30, 1.0, 1.0, 50), static_cast<double>(f));
    ok = ok && close_rel(fitness(static_cast<double>(f)),
                         static_cast<double>(1.0L / (1.0L + f)));
    // clamp
    ok = ok && pheromone(400, 1.0, 1.0, 50) == 0.0;
  }
  // probabilities normalize and match manual shares
  {
    DetectionParams p;
    auto s = score_members({{1, 50}, {2, 5}, {3, 5}}, p);
    long double f1 = 1.0L, fn = 1.0L / (1.0L + 0.9L);
    long double tot = f1 + 2.0L * fn;
    ok = ok && s.size() == 3;
    ok = ok && close_rel(s[0].probability, static_cast<double>(f1 / tot));
    ok = ok && close_rel(s[1].probability, static_cast<double>(fn / tot));
    ok = ok && close_rel(s[0].probability + s[1].probability + s[2].probability,
                         1.0);
  }
  // detention timer is four round trips
  {
    RttEstimate rtt(0.25);
    rtt.add_sample(0.3);
    rtt.add_sample(0.5);
    DetentionTable t;
    ok = ok && close_rel(t.detain(1, 0.0, rtt).theta,
                         4.0 * (0.3 + 0.5) / 2.0);
  }
  // distance and its aggregate
  {
    ok = ok && close_rel(distance({1, 2}, {4, 6}), 5.0);
    std::vector<Position> neigh{{3, 4}, {5, 12}};
    ok = ok && close_rel(aggregate_distance(neigh, {0, 0}), 18.0);
  }
  // the four evaluation measures against hand fractions
  {
    ConfusionCounts c;
    c.tp = 40;
    c.fn = 9;
    c.fp = 3;
    c.tn = 87;
    ok = ok && close_rel(*detection_rate(c), 100.0 * 40.0 / 49.0);
    ok = ok && close_rel(*false_negative_rate(c), 100.0 * 9.0 / 49.0);
    ok = ok && close_rel(*false_positive_rate(c), 100.0 * 3.0 / 90.0);
    ok = ok && close_rel(*packet_delivery_rate({{10, 10}, {100, 50}}), 75.0);
    ok = ok && !detection_rate(ConfusionCounts{}).has_value();
  }
  return ok;
}

// ---------------------------------------------------------------- 2 --

std::optional<NodeId> detect_oracle(const std::vector<MemberLedgerEntry>& led,
                                    const DetectionParams& p) {
  if (led.empty()) return std::nullopt;
  std::size_t m = led.size();
  std::vector<double> fit(m), prob(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double f = p.f0 * (1.0 - p.alpha * static_cast<double>(led[i].n_t) /
                                 static_cast<double>(p.n_max));
    if (f < 0.0) f = 0.0;
    fit[i] = 1.0 / (1.0 + f);
    total += fit[i];
  }
  std::size_t best = 0;
  for (std::size_t i = 0; i < m; ++i) {
    prob[i] = fit[i] / total;
    if (i == 0) continue;
    if (prob[i] > prob[best] ||
        (prob[i] == prob[best] &&
         (led[i].n_t > led[best].n_t ||
          (led[i].n_t == led[best].n_t && led[i].member < led[best].member))))
      best = i;
  }
  if (prob[best] > p.flag_factor / static_cast<double>(m))
    return led[best].member;
  return std::nullopt;
}

bool detector_vs_oracle() {
  DetectionParams p;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::uint64_t> count(0, 150);
  std::uniform_int_distribution<int> msize(2, 6);

  for (int trial = 0; trial < 1000; ++trial) {
    int m = msize(rng);
    std::vector<MemberLedgerEntry> led;
    for (int i = 0; i < m; ++i)
      led.push_back({static_cast<NodeId>(1 + i), count(rng)});
    if (detect(led, p) != detect_oracle(led, p)) return false;
  }
  return true;
}

// ------------------------------------------------------------ 3, 5 --

bool confusion_identities(bool& conservation_ok) {
  bool ok = true;
  conservation_ok = true;

  for (double ratio : {0.0, 0.1, 0.3}) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      SimConfig cfg;
      cfg.intruder_ratio = ratio;
      cfg.rng_seed = seed;
      cfg.sim_duration = 100.0;
      Simulation sim(cfg);
      sim.set_collect_trace(false);
      auto res = sim.run();

      auto attackers = static_cast<std::uint64_t>(
          std::floor(ratio * (cfg.n_nodes - 1)));
      const auto& c = res.metrics.confusion;
      ok = ok && (c.tp + c.fn == attackers);
      ok = ok && (c.fp + c.tn == cfg.n_nodes - 1 - attackers);
      if (attackers > 0) {
        ok = ok && res.metrics.dr.has_value() && res.metrics.fnr.has_value();
        ok = ok && close_rel(*res.metrics.dr + *res.metrics.fnr, 100.0, 1e-12);
      } else {
        ok = ok && !res.metrics.dr.has_value();
      }
      ok = ok && res.metrics.fpr.has_value();

      double ledger = res.energy.tx + res.energy.rx;
      if (std::fabs(res.node_energy_consumed - ledger) > 1e-9)
        conservation_ok = false;
    }
  }
  return ok;
}

// ---------------------------------------------------------------- 4 --

bool determinism() {
  SimConfig cfg;
  cfg.intruder_ratio = 0.2;
  cfg.rng_seed = 3;

  Simulation a(cfg), b(cfg);
  auto ra = a.run();
  auto rb = b.run();
  if (trace_csv(ra) != trace_csv(rb)) return false;
  if (detections_csv(ra) != detections_csv(rb)) return false;
  if (detentions_csv(ra) != detentions_csv(rb)) return false;

  SweepSpec spec;
  spec.ratios = {0.0, 0.2};
  spec.seeds = {1, 2};
  spec.base.sim_duration = 100.0;
  auto serial = run_sweep_serial(spec);
  auto parallel = run_sweep_parallel(spec);
  return sweep_csv(serial) == sweep_csv(parallel) &&
         agg_csv(aggregate(serial)) == agg_csv(aggregate(parallel));
}

// ------------------------------------------------------------ 6, 7 --

struct SweepOutcome {
  std::vector<SweepRow> on_rows;  // ratios x seeds, detection on
  std::vector<SweepRow> off_rows; // ratio 0.2 only, detection off
  std::vector<double> ratios{0.0, 0.1, 0.2, 0.3};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

SweepOutcome big_sweep() {
  SweepOutcome out;
  SweepSpec spec;
  spec.ratios = out.ratios;
  spec.seeds = out.seeds;
  out.on_rows = run_sweep_parallel(spec);

  spec.ratios = {0.2};
  spec.detection_enabled = false;
  out.off_rows = run_sweep_parallel(spec);
  return out;
}

double mean_pdr(const std::vector<SweepRow>& rows, double ratio) {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.ratio != ratio || !r.error.empty() || !r.pdr) continue;
    sum += *r.pdr;
    ++n;
  }
  return n > 0 ? sum / n : -1.0;
}

bool pdr_degrades_and_defense_helps(const SweepOutcome& sw) {
  // per-seed pairwise comparisons across adjacent ratios: the majority
  // must be non-increasing
  int wins = 0, total = 0;
  for (std::size_t i = 0; i + 1 < sw.ratios.size(); ++i) {
    for (auto seed : sw.seeds) {
      std::optional<double> lo_r, hi_r;
      for (const auto& r : sw.on_rows) {
        if (r.seed != seed || !r.pdr) continue;
        if (r.ratio == sw.ratios[i]) lo_r = *r.pdr;
        if (r.ratio == sw.ratios[i + 1]) hi_r = *r.pdr;
      }
      if (!lo_r || !hi_r) continue;
      ++total;
      if (*hi_r <= *lo_r + 1e-9) ++wins;
    }
  }
  bool monotone = total > 0 && 2 * wins > total;

  double on = mean_pdr(sw.on_rows, 0.2);
  double off = mean_pdr(sw.off_rows, 0.2);
  bool gap = on >= 0.0 && off >= 0.0 && on >= off + 10.0;
  if (!monotone || !gap)
    std::printf("  (pdr detail: monotone %d/%d, on %.2f off %.2f)\n", wins,
                total, on, off);
  return monotone && gap;
}

bool detection_quality(const SweepOutcome& sw) {
  double dr_sum = 0.0, fpr_sum = 0.0, fnr_sum = 0.0;
  int n = 0;
  bool partition = true;
  for (const auto& r : sw.on_rows) {
    if (r.ratio != 0.1 || !r.error.empty()) continue;
    if (!r.dr || !r.fpr || !r.fnr) return false;
    dr_sum += *r.dr;
    fpr_sum += *r.fpr;
    fnr_sum += *r.fnr;
    partition = partition && close_rel(*r.dr + *r.fnr, 100.0, 1e-12);
    ++n;
  }
  if (n == 0) return false;
  double dr = dr_sum / n, fpr = fpr_sum / n;
  bool ok = dr >= 85.0 && fpr <= 15.0 && partition;
  if (!ok)
    std::printf("  (detection detail: dr %.2f fpr %.2f fnr %.2f)\n", dr, fpr,
                fnr_sum / n);
  return ok;
}

// ---------------------------------------------------------------- 8 --

SimConfig tiny_cluster_cfg() {
  SimConfig cfg;
  cfg.n_nodes = 4;
  cfg.area_width = cfg.area_height = 100.0;
  cfg.tx_range = 200.0;
  cfg.sim_duration = 60.0;
  cfg.jitter = 0.0;
  cfg.w_energy = 1.0; // election by energy so the fixture head is fixed
  cfg.w_rssi = 0.0;
  cfg.w_distance = 0.0;
  return cfg;
}

std::vector<ThingState> tiny_cluster_nodes() {
  std::vector<ThingState> nodes(4);
  for (NodeId i = 0; i < 4; ++i) {
    nodes[i].id = i;
    nodes[i].e_initial = 5.0;
  }
  nodes[0].role = Role::Root;
  nodes[0].pos = {50, 50};
  nodes[1].pos = {40, 50};
  nodes[1].e_initial = 8.0; // wins the election
  nodes[2].pos = {60, 50};
  nodes[3].pos = {50, 60};
  nodes[3].attacker = true;
  return nodes;
}

bool quarantine_lifecycle() {
  const double W = 5.0;

  // branch 1: a persistent flooder is detained quickly, blocked while
  // detained, and re-detained after a hot supervision window
  double first_detain = -1.0;
  {
    SimConfig cfg = tiny_cluster_cfg();
    Simulation sim(cfg);
    sim.set_topology(tiny_cluster_nodes());
    auto res = sim.run();

    double first_supervise = -1.0;
    bool redetained = false, released = false;
    for (const auto& d : res.detentions) {
      if (!std::strcmp(d.transition, "detain") && first_detain < 0)
        first_detain = d.at;
      if (!std::strcmp(d.transition, "supervise") && first_supervise < 0)
        first_supervise = d.at;
      if (!std::strcmp(d.transition, "redetain")) redetained = true;
      if (!std::strcmp(d.transition, "release")) released = true;
      if (d.accused != 3) return false; // only the attacker is ever accused
    }
    if (first_detain < 0 || first_detain > 2.0 * W) return false;
    if (first_supervise < 0 || !redetained || released) return false;

    // while detained, nothing from the attacker is delivered, but the
    // honest member keeps getting through
    bool honest_during = false;
    for (const auto& e : res.trace) {
      if (e.at <= first_detain || e.at >= first_supervise) continue;
      if (!std::strcmp(e.kind, "deliver") && e.src == 3) return false;
      if (!std::strcmp(e.kind, "deliver") && e.src == 2) honest_during = true;
    }
    if (!honest_during) return false;
  }

  // branch 2: the flood stops early, so the supervision window is quiet
  // and the node is rehabilitated
  {
    SimConfig cfg = tiny_cluster_cfg();
    cfg.flood_until = 7.0;
    Simulation sim(cfg);
    sim.set_topology(tiny_cluster_nodes());
    auto res = sim.run();

    double release_at = -1.0;
    for (const auto& d : res.detentions)
      if (!std::strcmp(d.transition, "release")) release_at = d.at;
    if (release_at < 0) return false;
    for (const auto& d : res.detentions)
      if (d.at > release_at) return false; // stays released once quiet
  }
  return true;
}

// ---------------------------------------------------------------- 9 --

bool election_properties() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> msize(3, 6);
  std::uniform_int_distribution<int> ival(1, 1000);

  for (int trial = 0; trial < 1000; ++trial) {
    int m = msize(rng);
    std::vector<Candidate> cands;
    for (int i = 0; i < m; ++i) {
      Candidate c;
      c.node = static_cast<NodeId>(10 + i);
      c.e_residual = ival(rng);
      c.sum_distance = ival(rng);
      c.mean_rssi = -ival(rng);
      cands.push_back(c);
    }
    // make candidate 0 strictly dominant on every criterion
    for (const auto& c : cands) {
      cands[0].e_residual = std::max(cands[0].e_residual, c.e_residual + 1);
      cands[0].mean_rssi = std::max(cands[0].mean_rssi, c.mean_rssi + 1);
    }
    for (auto& c : cands)
      if (c.node != cands[0].node)
        c.sum_distance = std::max(c.sum_distance, cands[0].sum_distance + 1);

    NodeId winner = elect_cluster_head(cands, 1 / 3.0, 1 / 3.0, 1 / 3.0);
    if (winner != cands[0].node) return false;

    // scaling every energy by a power of two leaves the outcome alone
    for (auto& c : cands) c.e_residual *= 4.0;
    if (elect_cluster_head(cands, 1 / 3.0, 1 / 3.0, 1 / 3.0) != winner)
      return false;
  }

  // all-equal candidates: deterministic lowest-id tie break
  std::vector<Candidate> same{{9, 1, 1, -1}, {2, 1, 1, -1}, {5, 1, 1, -1}};
  if (elect_cluster_head(same, 1 / 3.0, 1 / 3.0, 1 / 3.0) != 2) return false;

  // cluster partition covers every alive ranked node: each one carries
  // exactly one cluster, and each head claims itself
  SimConfig cfg;
  cfg.intruder_ratio = 0.1;
  cfg.rng_seed = 11;
  cfg.sim_duration = 50.0;
  Simulation sim(cfg);
  sim.set_collect_trace(false);
  auto res = sim.run();
  for (const auto& node : res.final_nodes) {
    if (node.id == kRootId || !node.alive() || !node.rank) continue;
    if (!node.cluster_head) return false;
    if (node.role == Role::ClusterHead && *node.cluster_head != node.id)
      return false;
  }
  return true;
}

// --------------------------------------------------------------- 10 --

bool dodag_invariants() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 180.0);
  std::uniform_int_distribution<int> nsize(5, 50);

  SimConfig cfg;
  cfg.tx_range = 50.0;

  for (int trial = 0; trial < 500; ++trial) {
    int n = nsize(rng);
    std::vector<ThingState> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      nodes[i].id = static_cast<NodeId>(i);
      nodes[i].e_initial = 5.0;
      nodes[i].pos = {u(rng), u(rng)};
    }
    nodes[0].role = Role::Root;
    std::vector<NodeId> heads{1};
    if (n > 10) heads.push_back(2);

    build_dodag(heads, nodes, cfg);

    // BFS depth oracle over the in-range graph, heads at depth 1
    std::vector<int> depth(nodes.size(), -1);
    std::queue<NodeId> q;
    for (NodeId h : heads) {
      depth[h] = 1;
      q.push(h);
    }
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (const auto& w : nodes) {
        if (w.id == kRootId || depth[w.id] >= 0) continue;
        if (distance(nodes[v].pos, w.pos) <= cfg.tx_range) {
          depth[w.id] = depth[v] + 1;
          q.push(w.id);
        }
      }
    }

    for (const auto& node : nodes) {
      if (node.id == kRootId) {
        if (node.rank != 0u) return false;
        continue;
      }
      if (depth[node.id] < 0) {
        if (node.rank) return false;
        continue;
      }
      if (!node.rank || *node.rank != static_cast<std::uint32_t>(depth[node.id]))
        return false;
      // parent is exactly one rank above; the chain reaches the root in
      // rank steps (which also rules out cycles)
      if (!node.parent) return false;
      const auto& par = nodes[*node.parent];
      if (!par.rank || *par.rank + 1 != *node.rank) return false;
      if (route_upward(node.id, nodes).size() != *node.rank) return false;
    }
  }
  return true;
}

} // namespace

int main() {
  report(1, "closed-form oracles match (energy, rssi, detector, theta)",
         formula_oracles());
  report(2, "detector agrees with a brute-force oracle on 1000 clusters",
         detector_vs_oracle());

  bool conservation = false;
  bool identities = confusion_identities(conservation);
  report(3, "confusion counts partition the population; dr + fnr = 100",
         identities);
  report(4, "reruns and parallel sweeps are byte-identical", determinism());
  report(5, "energy ledger matches per-node consumption within 1e-9",
         conservation);

  auto sw = big_sweep();
  report(6, "pdr degrades with intruder ratio; the defense recovers >= 10 pp",
         pdr_degrades_and_defense_helps(sw));
  report(7, "dr >= 85% and fpr <= 15% at ratio 0.1 over 10 seeds",
         detection_quality(sw));

  report(8, "detention blocks a flooder, supervision re-detains or releases",
         quarantine_lifecycle());
  report(9, "election picks dominant candidates; scale and tie invariance",
         election_properties());
  report(10, "dodag ranks equal bfs depth; parent chains are acyclic",
         dodag_invariants());

  if (g_failures > 0) {
    std::printf("%d criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
