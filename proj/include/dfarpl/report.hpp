#ifndef DFARPL_REPORT_HPP
#define DFARPL_REPORT_HPP

#include <string>

#include "dfarpl/config.hpp"
#include "dfarpl/engine.hpp"

// Run artifacts: trace.csv, detections.csv, detentions.csv and
// run.json. Formatting is fixed so identical runs serialize to
// identical bytes.

namespace dfarpl {

std::string trace_csv(const RunResult& r);
std::string detections_csv(const RunResult& r);
std::string detentions_csv(const RunResult& r);

// Config echo, metrics (both 6-significant-digit percentages and exact
// counts), message/energy totals and wall time.
std::string run_json(const SimConfig& cfg, const RunResult& r,
                     double wall_seconds);

} // namespace dfarpl

#endif
