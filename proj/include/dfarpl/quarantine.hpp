#ifndef DFARPL_QUARANTINE_HPP
#define DFARPL_QUARANTINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dfarpl/types.hpp"

// Detention-list lifecycle: detain for theta = 4*RTT, hold until the
// next detection-window boundary, supervise for one full window, then
// release or re-detain based on the same threshold the detector uses.

namespace dfarpl {

enum class DetentionState { Detained, UnderSupervision, Released };

inline const char* to_string(DetentionState s) {
  switch (s) {
    case DetentionState::Detained:          return "detained";
    case DetentionState::UnderSupervision:  return "supervised";
    case DetentionState::Released:          return "released";
  }
  return "?";
}

struct DetentionEntry {
  NodeId accused = 0;
  double detained_at = 0.0;
  double theta = 0.0; // s; 4*RTT at detention time
  DetentionState state = DetentionState::Detained;
};

// Running mean of measured root round trips, with a configured prior
// before the first sample.
class RttEstimate {
 public:
  explicit RttEstimate(double prior) : prior_(prior) {}

  void add_sample(double rtt_s) {
    sum_ += rtt_s;
    ++n_;
  }
  double value() const { return n_ == 0 ? prior_ : sum_ / static_cast<double>(n_); }
  std::uint64_t samples() const { return n_; }

 private:
  double prior_;
  double sum_ = 0.0;
  std::uint64_t n_ = 0;
};

// Network-global detention table (every head installs the same entries,
// so one table models the broadcast state).
class DetentionTable {
 public:
  // Installs or refreshes an entry; re-accusation restarts the timer.
  DetentionEntry& detain(NodeId accused, double now, const RttEstimate& rtt);

  // Messages from the accused are rejected only while Detained;
  // supervised nodes must be observable.
  bool rejects(NodeId id) const;
  bool is_quarantined(NodeId id) const; // Detained or UnderSupervision

  // Entries whose theta expired move to UnderSupervision for the window
  // starting now. Returns the ids that entered supervision.
  std::vector<NodeId> begin_supervision(double now);

  // Supervision verdict at window close: release (erases entry) or
  // re-detain with a fresh theta.
  void release(NodeId id);
  void redetain(NodeId id, double now, const RttEstimate& rtt);

  void drop(NodeId id); // node died while detained

  std::optional<DetentionEntry> find(NodeId id) const;
  std::vector<NodeId> supervised() const;
  std::set<NodeId> quarantined_ids() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<NodeId, DetentionEntry> entries_;
};

} // namespace dfarpl

#endif
