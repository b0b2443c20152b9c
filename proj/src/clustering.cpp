#include "dfarpl/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfarpl {

std::uint32_t AreaGrid::cell_of(const Position& p) const {
  auto clamp_cell = [this](double v, double cell) {
    auto c = static_cast<std::int64_t>(v / cell);
    if (c < 0) c = 0;
    if (c >= cells_per_axis) c = cells_per_axis - 1;
    return static_cast<std::uint32_t>(c);
  };
  return clamp_cell(p.y, cell_h) * cells_per_axis + clamp_cell(p.x, cell_w);
}

AreaGrid AreaGrid::make(const SimConfig& cfg) {
  AreaGrid g;
  if (cfg.grid_cells > 0) {
    g.cells_per_axis = cfg.grid_cells;
  } else {
    double target = std::sqrt(static_cast<double>(cfg.n_nodes) / 20.0);
    g.cells_per_axis = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::lround(target)));
  }
  g.cell_w = cfg.area_width / g.cells_per_axis;
  g.cell_h = cfg.area_height / g.cells_per_axis;
  return g;
}

std::vector<HelloEntry> collect_hello(std::vector<ThingState>& nodes,
                                      const SimConfig& cfg,
                                      EnergyLedger* ledger) {
  const auto rc = RadioConstants::from(cfg);
  const double k_bits = 8.0 * cfg.ctrl_packet_size;
  auto& root = nodes[kRootId];

  std::vector<HelloEntry> out;
  for (auto& n : nodes) {
    if (n.id == kRootId || !n.alive()) continue;

    bool has_neighbor = false;
    for (const auto& other : nodes) {
      if (other.id == n.id || !other.alive()) continue;
      if (distance(n.pos, other.pos) <= cfg.tx_range) {
        has_neighbor = true;
        break;
      }
    }
    if (!has_neighbor) {
      n.unreachable = true;
      continue;
    }

    double etx = tx_energy(k_bits, distance(n.pos, root.pos), rc);
    n.e_consumed += etx;
    if (ledger) ledger->add_tx(etx);
    if (n.e_residual() <= 0.0) n.dead = true;
    if (root.alive()) {
      double erx = rx_energy(k_bits, rc);
      root.e_consumed += erx;
      if (ledger) ledger->add_rx(erx);
    }

    if (n.alive()) out.push_back({n.id, n.e_residual(), n.pos});
  }
  return out;
}

std::vector<std::vector<Candidate>>
shortlist_candidates(const std::vector<HelloEntry>& ledger, const AreaGrid& grid,
                     std::uint32_t top_i, const SimConfig& cfg) {
  const auto rc = RadioConstants::from(cfg);
  std::uint32_t n_cells = grid.cells_per_axis * grid.cells_per_axis;
  std::vector<std::vector<const HelloEntry*>> per_cell(n_cells);
  for (const auto& e : ledger) per_cell[grid.cell_of(e.pos)].push_back(&e);

  std::vector<std::vector<Candidate>> out(n_cells);
  for (std::uint32_t c = 0; c < n_cells; ++c) {
    auto& cell = per_cell[c];
    std::sort(cell.begin(), cell.end(),
              [](const HelloEntry* a, const HelloEntry* b) {
                if (a->e_residual != b->e_residual)
                  return a->e_residual > b->e_residual;
                return a->node < b->node;
              });
    if (cell.size() > top_i) cell.resize(top_i);

    for (const auto* e : cell) {
      Candidate cand;
      cand.node = e->node;
      cand.e_residual = e->e_residual;
      double rssi_sum = 0.0;
      std::uint32_t n_neigh = 0;
      for (const auto& other : ledger) {
        if (other.node == e->node) continue;
        double d = distance(e->pos, other.pos);
        if (d <= cfg.tx_range && d > 0.0) {
          cand.sum_distance += d;
          rssi_sum += rssi(d, rc);
          ++n_neigh;
        }
      }
      cand.mean_rssi = n_neigh > 0 ? rssi_sum / n_neigh : 0.0;
      out[c].push_back(cand);
    }
  }
  return out;
}

namespace {

// Min-max normalization; all-equal inputs map to 0.
double norm(double v, double lo, double hi) {
  return hi > lo ? (v - lo) / (hi - lo) : 0.0;
}

} // namespace

NodeId elect_cluster_head(const std::vector<Candidate>& cands,
                          double w_energy, double w_rssi, double w_distance) {
  if (cands.empty())
    throw std::invalid_argument("elect_cluster_head: empty candidate list");

  double e_lo = cands[0].e_residual, e_hi = e_lo;
  double r_lo = cands[0].mean_rssi, r_hi = r_lo;
  double d_lo = cands[0].sum_distance, d_hi = d_lo;
  for (const auto& c : cands) {
    e_lo = std::min(e_lo, c.e_residual);
    e_hi = std::max(e_hi, c.e_residual);
    r_lo = std::min(r_lo, c.mean_rssi);
    r_hi = std::max(r_hi, c.mean_rssi);
    d_lo = std::min(d_lo, c.sum_distance);
    d_hi = std::max(d_hi, c.sum_distance);
  }

  const Candidate* best = nullptr;
  double best_score = 0.0;
  for (const auto& c : cands) {
    double score = w_energy * norm(c.e_residual, e_lo, e_hi) +
                   w_rssi * norm(c.mean_rssi, r_lo, r_hi) -
                   w_distance * norm(c.sum_distance, d_lo, d_hi);
    if (!best || score > best_score ||
        (score == best_score && c.node < best->node)) {
      best = &c;
      best_score = score;
    }
  }
  return best->node;
}

bool rotation_due(const ClusterAssignment& cluster,
                  const std::vector<ThingState>& nodes, double energy_floor) {
  const auto& head = nodes[cluster.head];
  return !head.alive() || head.e_residual() < energy_floor * head.e_initial;
}

bool rotate_cluster_head(ClusterAssignment& cluster,
                         const std::vector<ThingState>& nodes,
                         const std::set<NodeId>& barred, double energy_floor) {
  (void)energy_floor; // trigger is checked by the caller via rotation_due
  const ThingState* best = nullptr;
  for (NodeId m : cluster.members) {
    const auto& n = nodes[m];
    if (!n.alive() || barred.count(m)) continue;
    if (!best) {
      best = &n;
      continue;
    }
    auto rank_of = [](const ThingState& t) {
      return t.rank ? *t.rank : std::numeric_limits<std::uint32_t>::max();
    };
    if (n.e_residual() > best->e_residual() ||
        (n.e_residual() == best->e_residual() &&
         (rank_of(n) < rank_of(*best) ||
          (rank_of(n) == rank_of(*best) && n.id < best->id)))) {
      best = &n;
    }
  }
  if (!best) return false; // cluster dissolves

  NodeId old_head = cluster.head;
  cluster.head = best->id;
  cluster.members.erase(best->id);
  if (nodes[old_head].alive() && !barred.count(old_head))
    cluster.members.insert(old_head);
  return true;
}

} // namespace dfarpl
