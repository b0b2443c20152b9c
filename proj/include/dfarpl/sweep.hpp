#ifndef DFARPL_SWEEP_HPP
#define DFARPL_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "dfarpl/config.hpp"
#include "dfarpl/metrics.hpp"

// Scenario grid runner: one simulation per (intruder ratio, seed) pair,
// plus per-ratio aggregation. Rows always come back in (ratio, seed)
// order, whichever variant ran them.

namespace dfarpl {

struct SweepSpec {
  std::vector<double> ratios;
  std::vector<std::uint64_t> seeds;
  SimConfig base;
  bool detection_enabled = true;

  void validate() const;
};

struct SweepRow {
  double ratio = 0.0;
  std::uint64_t seed = 0;
  bool detection = true;
  std::optional<double> pdr, dr, fpr, fnr;
  std::uint64_t sent = 0, received = 0;
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::string error; // empty on success; failed runs keep the sweep going
};

struct AggRow {
  double ratio = 0.0;
  std::uint32_t n_runs = 0;
  double pdr_mean = 0.0, pdr_stdev = 0.0;
  double dr_mean = 0.0, dr_stdev = 0.0;
  double fpr_mean = 0.0, fpr_stdev = 0.0;
  double fnr_mean = 0.0, fnr_stdev = 0.0;
};

// Serial reference and the OpenMP variant; identical results.
std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec);
std::vector<SweepRow> run_sweep_parallel(const SweepSpec& spec);

// Mean +- stdev per ratio over successful runs with a defined metric.
std::vector<AggRow> aggregate(const std::vector<SweepRow>& rows);

// CSV serialization; fixed column sets, 6 significant digits,
// undefined metrics as "na".
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string agg_csv(const std::vector<AggRow>& rows);

// Sweep file: key=value lines "ratios=0,0.1,..", "seeds=1,2,..",
// optional "detection=on|off"; any other key is applied to the base
// config. Unknown keys are errors.
SweepSpec load_sweep_spec(const std::string& path, const SimConfig& base);

} // namespace dfarpl

#endif
