#ifndef DFARPL_TYPES_HPP
#define DFARPL_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace dfarpl {

using NodeId = std::uint32_t;

// Node 0 is always the DODAG root.
inline constexpr NodeId kRootId = 0;

struct Position {
  double x = 0.0;
  double y = 0.0;
};

enum class Role { Root, ClusterHead, Member };

enum class MsgKind { Hello, Dio, Data, Warning, Ack, Probe };

inline const char* to_string(MsgKind k) {
  switch (k) {
    case MsgKind::Hello:   return "hello";
    case MsgKind::Dio:     return "dio";
    case MsgKind::Data:    return "data";
    case MsgKind::Warning: return "warning";
    case MsgKind::Ack:     return "ack";
    case MsgKind::Probe:   return "probe";
  }
  return "?";
}

// One IoT node. Mutable run state lives here; the engine owns the vector.
struct ThingState {
  NodeId id = 0;
  Position pos{};
  Role role = Role::Member;
  bool attacker = false;

  double e_initial = 0.0;  // J
  double e_consumed = 0.0; // J
  bool dead = false;

  // DODAG state; empty until ranked.
  std::optional<std::uint32_t> rank;
  std::optional<NodeId> parent;
  std::optional<NodeId> cluster_head; // rank-1 ancestor; self for heads
  bool unreachable = false;           // no neighbor within radio range

  bool alive() const { return !dead; }
  double e_residual() const {
    double r = e_initial - e_consumed;
    return r > 0.0 ? r : 0.0;
  }
};

} // namespace dfarpl

#endif
