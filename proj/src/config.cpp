#include "dfarpl/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dfarpl {

namespace {

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + v);
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("bad boolean value for '" + key + "': " + v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

} // namespace

void apply_key_value(SimConfig& cfg, const std::string& key,
                     const std::string& value) {
  using Setter = std::function<void(SimConfig&, const std::string&)>;
  static const std::map<std::string, Setter> setters = {
      {"n_nodes", [](SimConfig& c, const std::string& v) { c.n_nodes = static_cast<std::uint32_t>(parse_uint("n_nodes", v)); }},
      {"area_width", [](SimConfig& c, const std::string& v) { c.area_width = parse_double("area_width", v); }},
      {"area_height", [](SimConfig& c, const std::string& v) { c.area_height = parse_double("area_height", v); }},
      {"tx_range", [](SimConfig& c, const std::string& v) { c.tx_range = parse_double("tx_range", v); }},
      {"intruder_ratio", [](SimConfig& c, const std::string& v) { c.intruder_ratio = parse_double("intruder_ratio", v); }},
      {"rng_seed", [](SimConfig& c, const std::string& v) { c.rng_seed = parse_uint("rng_seed", v); }},
      {"packet_size", [](SimConfig& c, const std::string& v) { c.packet_size = static_cast<std::uint32_t>(parse_uint("packet_size", v)); }},
      {"ctrl_packet_size", [](SimConfig& c, const std::string& v) { c.ctrl_packet_size = static_cast<std::uint32_t>(parse_uint("ctrl_packet_size", v)); }},
      {"sim_duration", [](SimConfig& c, const std::string& v) { c.sim_duration = parse_double("sim_duration", v); }},
      {"cbr_interval", [](SimConfig& c, const std::string& v) { c.cbr_interval = parse_double("cbr_interval", v); }},
      {"flood_interval", [](SimConfig& c, const std::string& v) { c.flood_interval = parse_double("flood_interval", v); }},
      {"flood_start", [](SimConfig& c, const std::string& v) { c.flood_start = parse_double("flood_start", v); }},
      {"flood_until", [](SimConfig& c, const std::string& v) { c.flood_until = parse_double("flood_until", v); }},
      {"jitter", [](SimConfig& c, const std::string& v) { c.jitter = parse_double("jitter", v); }},
      {"e_elec", [](SimConfig& c, const std::string& v) { c.e_elec = parse_double("e_elec", v); }},
      {"e_amp", [](SimConfig& c, const std::string& v) { c.e_amp = parse_double("e_amp", v); }},
      {"initial_energy", [](SimConfig& c, const std::string& v) { c.initial_energy = parse_double("initial_energy", v); }},
      {"gain_tx", [](SimConfig& c, const std::string& v) { c.gain_tx = parse_double("gain_tx", v); }},
      {"gain_rx", [](SimConfig& c, const std::string& v) { c.gain_rx = parse_double("gain_rx", v); }},
      {"freq", [](SimConfig& c, const std::string& v) { c.freq = parse_double("freq", v); }},
      {"prop_speed", [](SimConfig& c, const std::string& v) { c.prop_speed = parse_double("prop_speed", v); }},
      {"candidates_per_area", [](SimConfig& c, const std::string& v) { c.candidates_per_area = static_cast<std::uint32_t>(parse_uint("candidates_per_area", v)); }},
      {"grid_cells", [](SimConfig& c, const std::string& v) { c.grid_cells = static_cast<std::uint32_t>(parse_uint("grid_cells", v)); }},
      {"ch_energy_floor", [](SimConfig& c, const std::string& v) { c.ch_energy_floor = parse_double("ch_energy_floor", v); }},
      {"w_energy", [](SimConfig& c, const std::string& v) { c.w_energy = parse_double("w_energy", v); }},
      {"w_rssi", [](SimConfig& c, const std::string& v) { c.w_rssi = parse_double("w_rssi", v); }},
      {"w_distance", [](SimConfig& c, const std::string& v) { c.w_distance = parse_double("w_distance", v); }},
      {"detection_enabled", [](SimConfig& c, const std::string& v) { c.detection_enabled = parse_bool("detection_enabled", v); }},
      {"f0", [](SimConfig& c, const std::string& v) { c.f0 = parse_double("f0", v); }},
      {"alpha", [](SimConfig& c, const std::string& v) { c.alpha = parse_double("alpha", v); }},
      {"n_max", [](SimConfig& c, const std::string& v) { c.n_max = static_cast<std::uint32_t>(parse_uint("n_max", v)); }},
      {"flag_factor", [](SimConfig& c, const std::string& v) { c.flag_factor = parse_double("flag_factor", v); }},
      {"detection_window", [](SimConfig& c, const std::string& v) { c.detection_window = parse_double("detection_window", v); }},
      {"rtt_prior", [](SimConfig& c, const std::string& v) { c.rtt_prior = parse_double("rtt_prior", v); }},
      {"probe_interval", [](SimConfig& c, const std::string& v) { c.probe_interval = parse_double("probe_interval", v); }},
      {"hop_proc_delay", [](SimConfig& c, const std::string& v) { c.hop_proc_delay = parse_double("hop_proc_delay", v); }},
      {"loss_prob", [](SimConfig& c, const std::string& v) { c.loss_prob = parse_double("loss_prob", v); }},
      {"head_capacity", [](SimConfig& c, const std::string& v) { c.head_capacity = parse_double("head_capacity", v); }},
      {"head_queue", [](SimConfig& c, const std::string& v) { c.head_queue = static_cast<std::uint32_t>(parse_uint("head_queue", v)); }},
  };

  auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key: " + key);
  it->second(cfg, value);
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value, got: " + line);
    }
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

void SimConfig::validate() const {
  if (n_nodes < 2) throw ConfigError("n_nodes must be >= 2");
  if (tx_range <= 0.0) throw ConfigError("tx_range must be > 0");
  if (area_width <= 0.0 || area_height <= 0.0)
    throw ConfigError("area dimensions must be > 0");
  if (intruder_ratio < 0.0 || intruder_ratio > 1.0)
    throw ConfigError("intruder_ratio must be in [0,1]");
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must be in [0,1]");
  if (n_max == 0) throw ConfigError("n_max must be > 0");
  if (packet_size == 0 || ctrl_packet_size == 0)
    throw ConfigError("packet sizes must be > 0");
  if (e_elec <= 0.0 || e_amp <= 0.0 || initial_energy <= 0.0)
    throw ConfigError("energy constants must be > 0");
  if (gain_tx <= 0.0 || gain_rx <= 0.0 || freq <= 0.0 || prop_speed <= 0.0)
    throw ConfigError("radio constants must be > 0");
  if (sim_duration <= 0.0) throw ConfigError("sim_duration must be > 0");
  if (cbr_interval <= 0.0 || flood_interval <= 0.0)
    throw ConfigError("traffic intervals must be > 0");
  if (flood_interval >= cbr_interval)
    throw ConfigError("flood_interval must be < cbr_interval");
  if (jitter < 0.0 || jitter >= 1.0) throw ConfigError("jitter must be in [0,1)");
  if (detection_window <= 0.0) throw ConfigError("detection_window must be > 0");
  if (flag_factor <= 1.0) throw ConfigError("flag_factor must be > 1");
  if (rtt_prior <= 0.0) throw ConfigError("rtt_prior must be > 0");
  if (head_capacity <= 0.0) throw ConfigError("head_capacity must be > 0");
  if (loss_prob < 0.0 || loss_prob >= 1.0)
    throw ConfigError("loss_prob must be in [0,1)");
  if (ch_energy_floor < 0.0 || ch_energy_floor >= 1.0)
    throw ConfigError("ch_energy_floor must be in [0,1)");
  if (candidates_per_area == 0)
    throw ConfigError("candidates_per_area must be > 0");
}

} // namespace dfarpl
