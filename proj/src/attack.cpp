#include "dfarpl/attack.hpp"

#include <cmath>

namespace dfarpl {

std::vector<ScheduledMessage> schedule_flood(NodeId node, NodeId head,
                                             const AttackerProfile& profile,
                                             double until,
                                             std::uint32_t packet_size) {
  std::vector<ScheduledMessage> out;
  if (until <= profile.active_from || profile.flood_interval <= 0.0) return out;

  // floor with a small epsilon so until = from + k*interval yields k sends
  double span = until - profile.active_from;
  auto count = static_cast<std::uint64_t>(
      std::floor(span / profile.flood_interval + 1e-9));
  out.reserve(count);
  for (std::uint64_t k = 1; k <= count; ++k) {
    out.push_back({MsgKind::Data, node, head, packet_size,
                   profile.active_from + static_cast<double>(k) *
                                             profile.flood_interval});
  }
  return out;
}

} // namespace dfarpl
