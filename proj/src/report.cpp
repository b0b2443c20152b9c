#include "dfarpl/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace dfarpl {

namespace {

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", t);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace

std::string trace_csv(const RunResult& r) {
  std::ostringstream os;
  os << "time,kind,src,dst,info\n";
  for (const auto& e : r.trace)
    os << fmt_time(e.at) << ',' << e.kind << ',' << e.src << ',' << e.dst
       << ',' << e.info << '\n';
  return os.str();
}

std::string detections_csv(const RunResult& r) {
  std::ostringstream os;
  os << "time,head,member,n_t,pheromone,fitness,probability,accused\n";
  for (const auto& d : r.detections)
    os << fmt_time(d.at) << ',' << d.head << ',' << d.member << ',' << d.n_t
       << ',' << fmt6(d.pheromone) << ',' << fmt6(d.fitness) << ','
       << fmt6(d.probability) << ',' << (d.accused ? 1 : 0) << '\n';
  return os.str();
}

std::string detentions_csv(const RunResult& r) {
  std::ostringstream os;
  os << "time,accused,theta,transition\n";
  for (const auto& d : r.detentions)
    os << fmt_time(d.at) << ',' << d.accused << ',' << fmt6(d.theta) << ','
       << d.transition << '\n';
  return os.str();
}

std::string run_json(const SimConfig& cfg, const RunResult& r,
                     double wall_seconds) {
  nlohmann::ordered_json j;

  j["config"] = {
      {"n_nodes", cfg.n_nodes},
      {"area_width", cfg.area_width},
      {"area_height", cfg.area_height},
      {"tx_range", cfg.tx_range},
      {"intruder_ratio", cfg.intruder_ratio},
      {"rng_seed", cfg.rng_seed},
      {"packet_size", cfg.packet_size},
      {"ctrl_packet_size", cfg.ctrl_packet_size},
      {"sim_duration", cfg.sim_duration},
      {"cbr_interval", cfg.cbr_interval},
      {"flood_interval", cfg.flood_interval},
      {"flood_start", cfg.flood_start},
      {"flood_until", cfg.flood_until},
      {"jitter", cfg.jitter},
      {"e_elec", cfg.e_elec},
      {"e_amp", cfg.e_amp},
      {"initial_energy", cfg.initial_energy},
      {"detection_enabled", cfg.detection_enabled},
      {"f0", cfg.f0},
      {"alpha", cfg.alpha},
      {"n_max", cfg.n_max},
      {"flag_factor", cfg.flag_factor},
      {"detection_window", cfg.detection_window},
      {"rtt_prior", cfg.rtt_prior},
      {"probe_interval", cfg.probe_interval},
      {"hop_proc_delay", cfg.hop_proc_delay},
      {"loss_prob", cfg.loss_prob},
      {"head_capacity", cfg.head_capacity},
      {"head_queue", cfg.head_queue},
      {"ch_energy_floor", cfg.ch_energy_floor},
      {"candidates_per_area", cfg.candidates_per_area},
      {"grid_cells", cfg.grid_cells},
  };

  auto pct = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    if (!v) return nullptr;
    return std::stod(fmt6(*v));
  };
  j["metrics"] = {
      {"pdr", pct(r.metrics.pdr)},
      {"dr", pct(r.metrics.dr)},
      {"fpr", pct(r.metrics.fpr)},
      {"fnr", pct(r.metrics.fnr)},
  };
  // exact counts for lossless downstream checks
  j["counts"] = {
      {"sent", r.metrics.delivery.sent},
      {"received", r.metrics.delivery.received},
      {"tp", r.metrics.confusion.tp},
      {"fp", r.metrics.confusion.fp},
      {"tn", r.metrics.confusion.tn},
      {"fn", r.metrics.confusion.fn},
  };
  j["messages"] = {
      {"created", r.msgs_created},
      {"delivered", r.msgs_delivered},
      {"dropped", r.msgs_dropped},
  };
  j["energy"] = {
      {"tx_total_j", r.energy.tx},
      {"rx_total_j", r.energy.rx},
      {"node_consumed_j", r.node_energy_consumed},
  };
  j["dodag"] = {
      {"heads", r.initial_heads},
      {"dio_broadcasts", r.dodag.dio_broadcasts},
      {"ranked", r.dodag.ranked_nodes},
      {"unranked", r.dodag.unranked_nodes},
  };
  j["rtt"] = {
      {"mean_s", r.measured_rtt},
      {"samples", r.rtt_samples},
  };
  j["wall_seconds"] = wall_seconds;
  return j.dump(2) + "\n";
}

} // namespace dfarpl
