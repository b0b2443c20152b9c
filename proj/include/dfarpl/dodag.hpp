#ifndef DFARPL_DODAG_HPP
#define DFARPL_DODAG_HPP

#include <cstdint>
#include <vector>

#include "dfarpl/config.hpp"
#include "dfarpl/radio.hpp"
#include "dfarpl/types.hpp"

// DODAG construction by level-wise DIO flooding. Root is rank 0;
// elected heads are seeded at rank 1 over a logical link to the root;
// everything else joins via the first minimal-rank advertiser in radio
// range (ties: higher RSSI, then lower id).

namespace dfarpl {

struct DodagStats {
  std::uint32_t dio_broadcasts = 0;
  std::uint32_t ranked_nodes = 0; // excluding root
  std::uint32_t unranked_nodes = 0;
};

// Assigns rank/parent/cluster_head in place. Debits DIO broadcast tx
// energy (at tx_range) per advertiser and rx energy per join. Nodes no
// DIO reaches stay unranked.
DodagStats build_dodag(const std::vector<NodeId>& heads,
                       std::vector<ThingState>& nodes, const SimConfig& cfg,
                       EnergyLedger* ledger = nullptr);

// Parent chain from node to root; length equals the node's rank.
// Throws on unranked nodes.
std::vector<NodeId> route_upward(NodeId from,
                                 const std::vector<ThingState>& nodes);

// Edge-list text dump (child parent per line), for debugging artifacts.
std::string dump_edges(const std::vector<ThingState>& nodes);

} // namespace dfarpl

#endif
