#include "dfarpl/metrics.hpp"

namespace dfarpl {

std::optional<double> packet_delivery_rate(const std::vector<DeliveryCounts>& runs) {
  double sum = 0.0;
  std::uint64_t n = 0;
  for (const auto& r : runs) {
    if (r.sent == 0) continue; // excluded with a warning at the call site
    sum += static_cast<double>(r.received) / static_cast<double>(r.sent);
    ++n;
  }
  if (n == 0) return std::nullopt;
  return 100.0 * sum / static_cast<double>(n);
}

std::optional<double> detection_rate(const ConfusionCounts& c) {
  std::uint64_t attackers = c.tp + c.fn;
  if (attackers == 0) return std::nullopt;
  return 100.0 * static_cast<double>(c.tp) / static_cast<double>(attackers);
}

std::optional<double> false_positive_rate(const ConfusionCounts& c) {
  std::uint64_t normals = c.fp + c.tn;
  if (normals == 0) return std::nullopt;
  return 100.0 * static_cast<double>(c.fp) / static_cast<double>(normals);
}

std::optional<double> false_negative_rate(const ConfusionCounts& c) {
  std::uint64_t attackers = c.tp + c.fn;
  if (attackers == 0) return std::nullopt;
  return 100.0 * static_cast<double>(c.fn) / static_cast<double>(attackers);
}

} // namespace dfarpl
