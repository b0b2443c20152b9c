#ifndef DFARPL_ATTACK_HPP
#define DFARPL_ATTACK_HPP

#include <vector>

#include "dfarpl/types.hpp"

// Flooding-attacker behavior: periodic high-rate requests toward the
// node's cluster head, strictly noisier than the CBR baseline.

namespace dfarpl {

struct AttackerProfile {
  double flood_interval = 0.1; // s; must be < cbr_interval
  double active_from = 0.0;    // s
};

struct ScheduledMessage {
  MsgKind kind = MsgKind::Data;
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t size = 0; // bytes
  double sent_at = 0.0;   // s
};

// Jitter-free flood schedule: one message at active_from + k*interval
// for k = 1 .. floor((until - active_from)/interval). Empty when the
// window is empty. The engine reproduces this exactly when jitter = 0.
std::vector<ScheduledMessage> schedule_flood(NodeId node, NodeId head,
                                             const AttackerProfile& profile,
                                             double until,
                                             std::uint32_t packet_size);

} // namespace dfarpl

#endif
