#ifndef DFARPL_ENGINE_HPP
#define DFARPL_ENGINE_HPP

#include <string>
#include <vector>

#include "dfarpl/aco.hpp"
#include "dfarpl/clustering.hpp"
#include "dfarpl/config.hpp"
#include "dfarpl/dodag.hpp"
#include "dfarpl/metrics.hpp"
#include "dfarpl/quarantine.hpp"
#include "dfarpl/types.hpp"

// Deterministic discrete-event core. One run: topology -> hello ->
// shortlist -> election -> DODAG -> steady-state loop of CBR/flood
// traffic, range-gated delivery, windowed detection, quarantine
// transitions and head-rotation checks, until sim_duration.

namespace dfarpl {

struct TraceEvent {
  double at = 0.0;
  const char* kind = "";   // send|deliver|drop|accuse|detain|supervise|release|rotate
  std::int64_t src = -1;
  std::int64_t dst = -1;
  std::string info;
};

struct DetectionLogRow {
  double at = 0.0;
  NodeId head = 0; // kRootId for the root's own detector
  NodeId member = 0;
  std::uint64_t n_t = 0;
  double pheromone = 0.0;
  double fitness = 0.0;
  double probability = 0.0;
  bool accused = false;
};

struct DetentionLogRow {
  double at = 0.0;
  NodeId accused = 0;
  double theta = 0.0;
  const char* transition = ""; // detain|supervise|release|redetain|drop
};

struct RunResult {
  RunMetrics metrics;
  std::vector<TraceEvent> trace;
  std::vector<DetectionLogRow> detections;
  std::vector<DetentionLogRow> detentions;

  std::vector<ThingState> final_nodes;
  std::vector<NodeId> initial_heads;
  DodagStats dodag;
  std::string dodag_edges;

  // Global message accounting (all kinds, all hops).
  std::uint64_t msgs_created = 0;
  std::uint64_t msgs_delivered = 0;
  std::uint64_t msgs_dropped = 0;

  // Message-side energy ledger; conservation compares against the sum
  // of per-node e_consumed.
  EnergyLedger energy;
  double node_energy_consumed = 0.0;

  double measured_rtt = 0.0;
  std::uint64_t rtt_samples = 0;
};

// Seeded topology: root at the area center, the rest uniform in the
// rectangle, floor(ratio*(N-1)) non-root nodes flagged as attackers.
std::vector<ThingState> build_topology(const SimConfig& cfg);

class Simulation {
 public:
  explicit Simulation(SimConfig cfg);

  // Replaces the seeded topology (scripted fixtures in tests).
  void set_topology(std::vector<ThingState> nodes);

  // Trace/log collection is on by default; sweeps switch it off.
  void set_collect_trace(bool on) { collect_trace_ = on; }

  RunResult run();

 private:
  SimConfig cfg_;
  std::vector<ThingState> preset_nodes_;
  bool has_preset_ = false;
  bool collect_trace_ = true;
};

} // namespace dfarpl

#endif
