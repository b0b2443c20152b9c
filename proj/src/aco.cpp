#include "dfarpl/aco.hpp"

#include <algorithm>
#include <stdexcept>

namespace dfarpl {

double pheromone(std::uint64_t n_t, double f0, double alpha,
                 std::uint32_t n_max) {
  if (n_max == 0) throw std::invalid_argument("pheromone: n_max must be > 0");
  double f = f0 * (1.0 - alpha * static_cast<double>(n_t) /
                             static_cast<double>(n_max));
  return f > 0.0 ? f : 0.0;
}

double fitness(double pheromone_value) {
  return 1.0 / (1.0 + pheromone_value);
}

std::vector<AcoScore>& maliciousness_probabilities(std::vector<AcoScore>& scores) {
  double total = 0.0;
  for (const auto& s : scores) total += s.fitness;
  // fitness > 0 always, so total > 0 for nonempty input
  for (auto& s : scores) s.probability = s.fitness / total;
  return scores;
}

std::vector<AcoScore> score_members(const std::vector<MemberLedgerEntry>& ledger,
                                    const DetectionParams& p) {
  std::vector<AcoScore> scores;
  scores.reserve(ledger.size());
  for (const auto& e : ledger) {
    AcoScore s;
    s.member = e.member;
    s.pheromone = pheromone(e.n_t, p.f0, p.alpha, p.n_max);
    s.fitness = fitness(s.pheromone);
    scores.push_back(s);
  }
  if (!scores.empty()) maliciousness_probabilities(scores);
  return scores;
}

std::optional<NodeId> detect(const std::vector<MemberLedgerEntry>& ledger,
                             const DetectionParams& p) {
  if (ledger.empty()) return std::nullopt;
  auto scores = score_members(ledger, p);

  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const auto& a = scores[i];
    const auto& b = scores[best];
    if (a.probability > b.probability ||
        (a.probability == b.probability &&
         (ledger[i].n_t > ledger[best].n_t ||
          (ledger[i].n_t == ledger[best].n_t && a.member < b.member)))) {
      best = i;
    }
  }

  double threshold = p.flag_factor / static_cast<double>(ledger.size());
  if (scores[best].probability > threshold) return scores[best].member;
  return std::nullopt;
}

std::vector<std::vector<AcoScore>>
score_clusters_serial(const std::vector<std::vector<MemberLedgerEntry>>& clusters,
                      const DetectionParams& p) {
  std::vector<std::vector<AcoScore>> out(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i)
    out[i] = score_members(clusters[i], p);
  return out;
}

std::vector<std::vector<AcoScore>>
score_clusters_parallel(const std::vector<std::vector<MemberLedgerEntry>>& clusters,
                        const DetectionParams& p) {
  std::vector<std::vector<AcoScore>> out(clusters.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(clusters.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        score_members(clusters[static_cast<std::size_t>(i)], p);
  return out;
}

} // namespace dfarpl
