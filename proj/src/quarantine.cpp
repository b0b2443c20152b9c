#include "dfarpl/quarantine.hpp"

namespace dfarpl {

DetentionEntry& DetentionTable::detain(NodeId accused, double now,
                                       const RttEstimate& rtt) {
  auto& e = entries_[accused];
  e.accused = accused;
  e.detained_at = now;
  e.theta = 4.0 * rtt.value();
  e.state = DetentionState::Detained;
  return e;
}

bool DetentionTable::rejects(NodeId id) const {
  auto it = entries_.find(id);
  return it != entries_.end() && it->second.state == DetentionState::Detained;
}

bool DetentionTable::is_quarantined(NodeId id) const {
  return entries_.count(id) != 0;
}

std::vector<NodeId> DetentionTable::begin_supervision(double now) {
  std::vector<NodeId> started;
  for (auto& [id, e] : entries_) {
    if (e.state == DetentionState::Detained &&
        now >= e.detained_at + e.theta) {
      e.state = DetentionState::UnderSupervision;
      started.push_back(id);
    }
  }
  return started;
}

void DetentionTable::release(NodeId id) { entries_.erase(id); }

void DetentionTable::redetain(NodeId id, double now, const RttEstimate& rtt) {
  detain(id, now, rtt);
}

void DetentionTable::drop(NodeId id) { entries_.erase(id); }

std::optional<DetentionEntry> DetentionTable::find(NodeId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> DetentionTable::supervised() const {
  std::vector<NodeId> out;
  for (const auto& [id, e] : entries_)
    if (e.state == DetentionState::UnderSupervision) out.push_back(id);
  return out;
}

std::set<NodeId> DetentionTable::quarantined_ids() const {
  std::set<NodeId> out;
  for (const auto& [id, e] : entries_) out.insert(id);
  return out;
}

} // namespace dfarpl
