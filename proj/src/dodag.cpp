#include "dfarpl/dodag.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dfarpl/radio.hpp"

namespace dfarpl {

DodagStats build_dodag(const std::vector<NodeId>& heads,
                       std::vector<ThingState>& nodes, const SimConfig& cfg,
                       EnergyLedger* ledger) {
  const auto rc = RadioConstants::from(cfg);
  const double k_bits = 8.0 * cfg.ctrl_packet_size;
  DodagStats stats;

  for (auto& n : nodes) {
    n.rank.reset();
    n.parent.reset();
    n.cluster_head.reset();
  }
  nodes[kRootId].rank = 0;

  for (NodeId h : heads) {
    auto& n = nodes[h];
    if (!n.alive()) continue;
    n.rank = 1;
    n.parent = kRootId;
    n.cluster_head = h;
    n.role = Role::ClusterHead;
  }

  // Level-wise DIO propagation: every node ranked r broadcasts once;
  // unranked in-range listeners join at r+1.
  std::vector<NodeId> frontier;
  for (NodeId h : heads)
    if (nodes[h].rank) frontier.push_back(h);

  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    std::vector<NodeId> next;

    for (auto& n : nodes) {
      if (n.rank || !n.alive() || n.id == kRootId) continue;

      const ThingState* best = nullptr;
      double best_d = 0.0;
      for (NodeId f : frontier) {
        const auto& adv = nodes[f];
        double d = distance(n.pos, adv.pos);
        if (d > cfg.tx_range) continue;
        // higher RSSI == shorter distance; tie on distance -> lower id
        if (!best || d < best_d || (d == best_d && adv.id < best->id)) {
          best = &adv;
          best_d = d;
        }
      }
      if (best) {
        n.parent = best->id;
        n.rank = *best->rank + 1;
        n.cluster_head = best->cluster_head;
        next.push_back(n.id);
      }
    }

    // Energy: one broadcast per advertiser at full range, one rx per join.
    for (NodeId f : frontier) {
      auto& adv = nodes[f];
      double etx = tx_energy(k_bits, cfg.tx_range, rc);
      adv.e_consumed += etx;
      if (ledger) ledger->add_tx(etx);
      if (adv.e_residual() <= 0.0) adv.dead = true;
      ++stats.dio_broadcasts;
    }
    for (NodeId j : next) {
      auto& n = nodes[j];
      double erx = rx_energy(k_bits, rc);
      n.e_consumed += erx;
      if (ledger) ledger->add_rx(erx);
      if (n.e_residual() <= 0.0) n.dead = true;
    }

    frontier = std::move(next);
  }

  for (const auto& n : nodes) {
    if (n.id == kRootId) continue;
    if (n.rank)
      ++stats.ranked_nodes;
    else if (n.alive())
      ++stats.unranked_nodes;
  }
  return stats;
}

std::vector<NodeId> route_upward(NodeId from,
                                 const std::vector<ThingState>& nodes) {
  const auto& start = nodes.at(from);
  if (!start.rank) throw std::runtime_error("route_upward: node is unranked");

  std::vector<NodeId> path;
  NodeId cur = from;
  while (cur != kRootId) {
    const auto& n = nodes[cur];
    if (!n.parent) throw std::runtime_error("route_upward: broken parent chain");
    cur = *n.parent;
    path.push_back(cur);
  }
  return path;
}

std::string dump_edges(const std::vector<ThingState>& nodes) {
  std::ostringstream os;
  for (const auto& n : nodes)
    if (n.parent) os << n.id << " " << *n.parent << "\n";
  return os.str();
}

} // namespace dfarpl
