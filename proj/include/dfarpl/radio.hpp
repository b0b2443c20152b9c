#ifndef DFARPL_RADIO_HPP
#define DFARPL_RADIO_HPP

#include <cmath>
#include <span>
#include <stdexcept>

#include "dfarpl/config.hpp"
#include "dfarpl/types.hpp"

// First-order radio energy model plus Friis-based RSSI. Everything here
// is a pure function over value types.

namespace dfarpl {

struct EnergyState {
  double e_initial = 0.0;  // J
  double e_consumed = 0.0; // J
};

// Message-side energy accounting, accumulated wherever a debit happens.
// The conservation check compares its totals against the per-node sums.
struct EnergyLedger {
  double tx = 0.0; // J
  double rx = 0.0; // J
  std::uint64_t tx_events = 0;
  std::uint64_t rx_events = 0;

  void add_tx(double j) { tx += j; ++tx_events; }
  void add_rx(double j) { rx += j; ++rx_events; }
};

struct RadioConstants {
  double e_elec = 50e-9;   // J/bit
  double e_amp = 100e-12;  // J/bit/m^2
  double gain_rx = 1.0;
  double gain_tx = 1.0;
  double freq = 2.4e9;     // Hz
  double prop_speed = 3e8; // m/s

  static RadioConstants from(const SimConfig& cfg) {
    return {cfg.e_elec, cfg.e_amp, cfg.gain_rx, cfg.gain_tx, cfg.freq,
            cfg.prop_speed};
  }
};

// Residual energy, floored at zero; a node at the floor is dead.
inline double residual_energy(const EnergyState& e) {
  double r = e.e_initial - e.e_consumed;
  return r > 0.0 ? r : 0.0;
}

// Energy to transmit k bits over d meters: k*e_elec + k*e_amp*d^2.
inline double tx_energy(double k_bits, double d_m, const RadioConstants& rc) {
  if (d_m < 0.0) throw std::invalid_argument("tx_energy: negative distance");
  return k_bits * rc.e_elec + k_bits * rc.e_amp * d_m * d_m;
}

// Energy to receive k bits: k*e_elec.
inline double rx_energy(double k_bits, const RadioConstants& rc) {
  return k_bits * rc.e_elec;
}

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Sum of distances from pos to every neighbor position; 0 when empty.
inline double aggregate_distance(std::span<const Position> neighbors,
                                 const Position& pos) {
  double sum = 0.0;
  for (const auto& p : neighbors) sum += distance(pos, p);
  return sum;
}

// Friis receive/transmit power ratio in dB. d must be > 0; callers must
// special-case co-located nodes.
inline double rssi(double d_m, const RadioConstants& rc) {
  if (d_m <= 0.0) throw std::invalid_argument("rssi: d must be > 0");
  double lambda = rc.prop_speed / rc.freq;
  double a = lambda / (4.0 * M_PI * d_m);
  double ratio = rc.gain_rx * rc.gain_tx * a * a;
  return 10.0 * std::log10(ratio);
}

} // namespace dfarpl

#endif
