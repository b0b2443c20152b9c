#ifndef DFARPL_CONFIG_HPP
#define DFARPL_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dfarpl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Whole-run configuration. Loadable from a flat key=value file; unknown
// keys are rejected. Every field has a CLI flag or config key of the
// same name.
struct SimConfig {
  // Topology
  std::uint32_t n_nodes = 100;
  double area_width = 300.0;   // m
  double area_height = 300.0;  // m
  double tx_range = 60.0;      // m
  double intruder_ratio = 0.0; // fraction of non-root nodes
  std::uint64_t rng_seed = 1;

  // Traffic
  std::uint32_t packet_size = 512;     // bytes, data
  std::uint32_t ctrl_packet_size = 64; // bytes, hello/dio/warning/ack/probe
  double sim_duration = 200.0;         // s
  double cbr_interval = 1.0;           // s
  double flood_interval = 0.1;         // s
  double flood_start = 0.0;            // s
  double flood_until = -1.0;           // s; <0 means sim_duration
  double jitter = 0.1;                 // +-fraction on both intervals

  // Radio / energy
  double e_elec = 50e-9;        // J/bit
  double e_amp = 100e-12;       // J/bit/m^2
  double initial_energy = 5.0;  // J
  double gain_tx = 1.0;
  double gain_rx = 1.0;
  double freq = 2.4e9;          // Hz
  double prop_speed = 3e8;      // m/s

  // Clustering
  std::uint32_t candidates_per_area = 3;
  std::uint32_t grid_cells = 0;      // per axis; 0 = auto (~20 nodes/cell)
  double ch_energy_floor = 0.10;     // rotation trigger fraction
  double w_energy = 1.0 / 3.0;
  double w_rssi = 1.0 / 3.0;
  double w_distance = 1.0 / 3.0;

  // Detection
  bool detection_enabled = true;
  double f0 = 1.0;
  double alpha = 1.0;
  std::uint32_t n_max = 50;      // messages per window
  double flag_factor = 1.2;      // gamma
  double detection_window = 5.0; // s

  // Quarantine
  double rtt_prior = 0.25;    // s, before the first probe sample
  double probe_interval = 1.0; // s

  // Engine
  double hop_proc_delay = 0.001; // s per hop
  double loss_prob = 0.0;        // optional uniform loss, default off
  double head_capacity = 40.0;   // msgs/s a head can service
  std::uint32_t head_queue = 20; // backlog limit in messages

  double effective_flood_until() const {
    return flood_until < 0.0 ? sim_duration : flood_until;
  }

  // Throws ConfigError on violated invariants.
  void validate() const;
};

// Parses a flat key=value file. '#' starts a comment; blank lines are
// skipped; unknown keys throw ConfigError.
SimConfig load_config(const std::string& path);

// Applies a single key=value pair onto cfg; throws on unknown key or
// unparsable value.
void apply_key_value(SimConfig& cfg, const std::string& key,
                     const std::string& value);

} // namespace dfarpl

#endif
