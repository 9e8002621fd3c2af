#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "combwire/nullifier.hpp"

namespace combwire {

/// Two-tone balanced homodyne detection settings. The local oscillator
/// sits at half the chosen pump frequency plus lo_offset_index FSRs, and
/// the EOM puts sidebands at +-(sideband_n + 1/2) FSR around it.
struct BhdConfig {
  PumpCenter lo_center_pump = PumpCenter::Y;
  int lo_offset_index = 0;
  int sideband_n = 0;
  double theta_lo = 0.0;
  double theta_o = 0.0;
  double dark_to_shot = 0.0;            ///< V_en / V_sn
  double modulator_bandwidth = 14e9;    ///< Hz

  void validate(const CombSpec& comb) const;
};

struct SidebandSelection {
  std::optional<std::pair<int, int>> pair;  ///< (upper, lower) comb indices
  bool between_modes = false;
  bool out_of_range = false;

  bool empty() const { return !pair.has_value(); }
};

/// Comb indices hit by the two LO sidebands. Zero offset selects the
/// matched pair (n, p - n); a nonzero offset a pair summing to p + 2*offset.
/// Sidebands landing between comb lines, or outside the simulated window,
/// select nothing (vacuum).
SidebandSelection selected_modes(const BhdConfig& cfg, const PumpConfig& pumps, const CombSpec& comb);

/// The observable the detection chain measures: the four-term template over
/// the selected pair at EOM angle theta_o, globally rotated by theta_lo.
/// theta_lo in multiples of pi reproduces the stationary nullifier forms;
/// shifting theta_o by pi/2 swaps the Q-type and P-type combinations.
QuadratureCombination measured_observable(const BhdConfig& cfg, const PumpConfig& pumps,
                                          const CombSpec& comb);

struct ScanPoint {
  double theta_lo = 0.0;
  double raw_db = 0.0;        ///< with dark-noise contamination
  double corrected_db = 0.0;  ///< actual squeezing level
};

struct ScanTrace {
  BhdConfig cfg;
  std::string descriptor;
  std::vector<ScanPoint> points;
};

/// Squeezing level versus LO phase. Nullifier selections oscillate with
/// period pi; wrong-frequency selections are flat; empty selections sit at
/// shot noise.
ScanTrace phase_scan(const GaussianState& state, const BhdConfig& cfg, const PumpConfig& pumps,
                     const CombSpec& comb, std::span<const double> theta_lo_grid);

/// Dark-noise contamination of a variance ratio: (eta + d) / (1 + d).
double contaminate(double eta_act, double dark_to_shot);

/// Exact inverse of contaminate: eta_act = (eta_exp - 1) d + eta_exp.
/// A nonpositive result is rejected as unphysical.
double correct_electronic_noise(double eta_exp, double dark_to_shot);

/// EOM drive phase accumulated in a coax cable of the given length at the
/// sideband frequency (n + 1/2) * FSR, for a 2c/3 propagation velocity.
double eom_cable_phase(double cable_length_m, int sideband_n, double fsr_hz);

}  // namespace combwire
