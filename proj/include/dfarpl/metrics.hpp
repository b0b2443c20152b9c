#ifndef DFARPL_METRICS_HPP
#define DFARPL_METRICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

// The four evaluation measures: packet delivery rate, detection rate,
// false positive rate, false negative rate. Rates undefined for their
// population (e.g., DR with zero attackers) come back as nullopt.

namespace dfarpl {

struct ConfusionCounts {
  std::uint64_t tp = 0; // attackers accused at least once
  std::uint64_t fn = 0; // attackers never accused
  std::uint64_t fp = 0; // normal nodes accused at least once
  std::uint64_t tn = 0; // normal nodes never accused
};

struct DeliveryCounts {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
};

// Mean of per-run received/sent ratios, in percent. Runs with sent = 0
// are excluded; all-excluded input yields nullopt.
std::optional<double> packet_delivery_rate(const std::vector<DeliveryCounts>& runs);

std::optional<double> detection_rate(const ConfusionCounts& c);
std::optional<double> false_positive_rate(const ConfusionCounts& c);
std::optional<double> false_negative_rate(const ConfusionCounts& c);

struct RunMetrics {
  ConfusionCounts confusion;
  DeliveryCounts delivery;
  std::optional<double> pdr;
  std::optional<double> dr;
  std::optional<double> fpr;
  std::optional<double> fnr;

  static RunMetrics from(const ConfusionCounts& c, const DeliveryCounts& d) {
    RunMetrics m;
    m.confusion = c;
    m.delivery = d;
    m.pdr = packet_delivery_rate({d});
    m.dr = detection_rate(c);
    m.fpr = false_positive_rate(c);
    m.fnr = false_negative_rate(c);
    return m;
  }
};

} // namespace dfarpl

#endif
