#ifndef DFARPL_CLUSTERING_HPP
#define DFARPL_CLUSTERING_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "dfarpl/config.hpp"
#include "dfarpl/radio.hpp"
#include "dfarpl/types.hpp"

// Cluster-head election: hello-phase ledger at the root, per-grid-cell
// shortlisting by residual energy, composite score over (energy, mean
// neighbor RSSI, aggregate neighbor distance), and energy-triggered
// rotation.

namespace dfarpl {

struct HelloEntry {
  NodeId node = 0;
  double e_residual = 0.0;
  Position pos{};
};

struct Candidate {
  NodeId node = 0;
  double e_residual = 0.0;   // J
  double sum_distance = 0.0; // m, over in-range neighbors
  double mean_rssi = 0.0;    // dB, over in-range neighbors
};

struct ClusterAssignment {
  NodeId head = 0;
  std::set<NodeId> members;
  std::uint32_t area_index = 0;
};

// Grid used to partition the deployment rectangle into "areas".
struct AreaGrid {
  std::uint32_t cells_per_axis = 1;
  double cell_w = 0.0;
  double cell_h = 0.0;

  std::uint32_t cell_of(const Position& p) const;
  // cells_per_axis chosen so a cell holds ~20 nodes, unless overridden.
  static AreaGrid make(const SimConfig& cfg);
};

// Hello phase: every alive non-root node with at least one in-range
// neighbor reports (id, residual energy, position) to the root. Debits
// tx energy at the node over the node->root geometric distance and rx
// energy at the root. Nodes with no in-range neighbor are marked
// unreachable and excluded.
std::vector<HelloEntry> collect_hello(std::vector<ThingState>& nodes,
                                      const SimConfig& cfg,
                                      EnergyLedger* ledger = nullptr);

// Top-i nodes per grid cell by residual energy (ties: lowest id), with
// Eq-style sum-distance and mean RSSI computed over in-range neighbors.
// Returned per cell; empty cells contribute no candidates.
std::vector<std::vector<Candidate>>
shortlist_candidates(const std::vector<HelloEntry>& ledger, const AreaGrid& grid,
                     std::uint32_t top_i, const SimConfig& cfg);

// Composite score over min-max normalized criteria:
//   w_E*norm(E) + w_R*norm(RSSI) - w_D*norm(D)
// Ties broken by lowest NodeId. Throws on empty input.
NodeId elect_cluster_head(const std::vector<Candidate>& cands,
                          double w_energy, double w_rssi, double w_distance);

// Rotation trigger: head dead, detained, or below ch_energy_floor of
// its initial energy. New head maximizes (residual energy, lowest rank,
// lowest id) among eligible members. Returns true when the assignment
// changed; cluster dissolves (head kept, members emptied upstream) when
// no member is eligible.
bool rotate_cluster_head(ClusterAssignment& cluster,
                         const std::vector<ThingState>& nodes,
                         const std::set<NodeId>& barred, double energy_floor);

bool rotation_due(const ClusterAssignment& cluster,
                  const std::vector<ThingState>& nodes, double energy_floor);

} // namespace dfarpl

#endif
