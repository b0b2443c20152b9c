#ifndef DFARPL_ACO_HPP
#define DFARPL_ACO_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dfarpl/types.hpp"

// Per-cluster-head ant-colony detector: pheromone per member decays with
// observed message count, fitness 1/(1+F) rises with it, and the member
// whose share of total fitness clears a relative threshold is accused.

namespace dfarpl {

struct DetectionParams {
  double f0 = 1.0;
  double alpha = 1.0;
  std::uint32_t n_max = 50;
  double flag_factor = 1.2; // gamma; accuse iff probability > gamma/m
};

// One member's traffic tally for the current detection window. The
// address/protocol metadata is recorded but only the count feeds the
// detector.
struct MemberLedgerEntry {
  NodeId member = 0;
  std::uint64_t n_t = 0;
  NodeId last_dst = 0;
  MsgKind last_kind = MsgKind::Data;
};

struct AcoScore {
  NodeId member = 0;
  double pheromone = 0.0;
  double fitness = 0.0;
  double probability = 0.0;
};

// F = f0 * (1 - alpha*n_t/n_max), clamped at 0.
double pheromone(std::uint64_t n_t, double f0, double alpha,
                 std::uint32_t n_max);

// Fit = 1/(1+F), in (0,1] for F >= 0.
double fitness(double pheromone_value);

// p_i = fit_i / sum(fit_j). Input scores must have fitness filled in;
// probabilities are written back and also returned.
std::vector<AcoScore>& maliciousness_probabilities(std::vector<AcoScore>& scores);

// Full score table (pheromone, fitness, probability) for one window.
std::vector<AcoScore> score_members(const std::vector<MemberLedgerEntry>& ledger,
                                    const DetectionParams& p);

// One accusation per window: argmax probability iff it exceeds
// gamma/m. Ties broken by higher n_t, then lower NodeId. Empty ledger
// yields no accusation.
std::optional<NodeId> detect(const std::vector<MemberLedgerEntry>& ledger,
                             const DetectionParams& p);

// Scores many clusters at once. The two variants compute identical
// results; the parallel one dispatches clusters across OpenMP threads.
std::vector<std::vector<AcoScore>>
score_clusters_serial(const std::vector<std::vector<MemberLedgerEntry>>& clusters,
                      const DetectionParams& p);
std::vector<std::vector<AcoScore>>
score_clusters_parallel(const std::vector<std::vector<MemberLedgerEntry>>& clusters,
                        const DetectionParams& p);

} // namespace dfarpl

#endif
