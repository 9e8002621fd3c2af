#include "combwire/homodyne.hpp"

#include <cmath>

namespace combwire {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

void BhdConfig::validate(const CombSpec& comb) const {
  comb.validate();
  if (sideband_n < 0) throw invariant_error("bhd: sideband_n must be >= 0");
  const double omega = (sideband_n + 0.5) * comb.delta_omega;
  if (omega > modulator_bandwidth)
    throw invariant_error("bhd: sideband frequency " + std::to_string(omega) +
                          " Hz exceeds the modulator bandwidth");
  if (dark_to_shot < 0) throw invariant_error("bhd: dark_to_shot must be >= 0");
}

SidebandSelection selected_modes(const BhdConfig& cfg, const PumpConfig& pumps,
                                 const CombSpec& comb) {
  cfg.validate(comb);
  pumps.validate();
  SidebandSelection sel;

  // LO sits at index p/2 + offset (units of the FSR, relative to omega0);
  // the sidebands land at +-(n + 1/2) around it. Doubled arithmetic keeps
  // everything integral: landing positions are 2u and 2l in half-FSRs.
  const int p = pump_index(pumps, cfg.lo_center_pump);
  const int upper2 = p + 2 * cfg.lo_offset_index + 2 * cfg.sideband_n + 1;
  const int lower2 = p + 2 * cfg.lo_offset_index - 2 * cfg.sideband_n - 1;
  if (upper2 % 2 != 0 || lower2 % 2 != 0) {
    sel.between_modes = true;
    return sel;
  }
  const int upper = upper2 / 2;
  const int lower = lower2 / 2;
  if (!comb.contains(upper) || !comb.contains(lower)) {
    sel.out_of_range = true;
    return sel;
  }
  sel.pair = {upper, lower};
  return sel;
}

QuadratureCombination measured_observable(const BhdConfig& cfg, const PumpConfig& pumps,
                                          const CombSpec& comb) {
  const auto sel = selected_modes(cfg, pumps, comb);
  if (sel.empty())
    throw invariant_error("measured_observable: the LO sidebands select no comb modes");
  const auto [upper, lower] = *sel.pair;
  return two_tone_template(upper, lower, cfg.lo_center_pump, cfg.theta_o, cfg.theta_lo);
}

ScanTrace phase_scan(const GaussianState& state, const BhdConfig& cfg, const PumpConfig& pumps,
                     const CombSpec& comb, std::span<const double> theta_lo_grid) {
  if (theta_lo_grid.empty()) throw invariant_error("phase_scan: empty theta_lo grid");
  const auto sel = selected_modes(cfg, pumps, comb);

  ScanTrace trace;
  trace.cfg = cfg;
  if (sel.empty()) {
    trace.descriptor = sel.between_modes ? "between-modes (vacuum)" : "out-of-range (vacuum)";
    for (double theta_lo : theta_lo_grid) trace.points.push_back({theta_lo, 0.0, 0.0});
    return trace;
  }

  const auto [upper, lower] = *sel.pair;
  const int p = pump_index(pumps, cfg.lo_center_pump);
  trace.descriptor = std::string(cfg.lo_center_pump == PumpCenter::Z ? "z" : "y") +
                     "-centered pair (" + std::to_string(upper) + ", " + std::to_string(lower) +
                     ")" + (upper + lower == p ? "" : " [wrong frequency]");

  for (double theta_lo : theta_lo_grid) {
    BhdConfig point_cfg = cfg;
    point_cfg.theta_lo = theta_lo;
    const auto obs = measured_observable(point_cfg, pumps, comb);
    const double ratio = state.variance(obs) / vacuum_variance(obs, state.vac_var());
    trace.points.push_back({theta_lo, 10.0 * std::log10(contaminate(ratio, cfg.dark_to_shot)),
                            10.0 * std::log10(ratio)});
  }
  return trace;
}

double contaminate(double eta_act, double dark_to_shot) {
  if (!(eta_act > 0)) throw invariant_error("contaminate: variance ratio must be positive");
  if (dark_to_shot < 0) throw invariant_error("contaminate: dark_to_shot must be >= 0");
  return (eta_act + dark_to_shot) / (1.0 + dark_to_shot);
}

double correct_electronic_noise(double eta_exp, double dark_to_shot) {
  if (!(eta_exp > 0)) throw invariant_error("correct_electronic_noise: ratio must be positive");
  if (dark_to_shot < 0) throw invariant_error("correct_electronic_noise: dark_to_shot must be >= 0");
  const double eta_act = (eta_exp - 1.0) * dark_to_shot + eta_exp;
  if (!(eta_act > 0))
    throw invariant_error("correct_electronic_noise: unphysical input combination (eta_act <= 0)");
  return eta_act;
}

double eom_cable_phase(double cable_length_m, int sideband_n, double fsr_hz) {
  if (cable_length_m < 0) throw invariant_error("eom_cable_phase: length must be >= 0");
  if (sideband_n < 0) throw invariant_error("eom_cable_phase: sideband_n must be >= 0");
  if (!(fsr_hz > 0)) throw invariant_error("eom_cable_phase: FSR must be positive");
  const double velocity = 2.0 * kSpeedOfLight / 3.0;
  const double pi = std::acos(-1.0);
  return 2.0 * pi * (sideband_n + 0.5) * fsr_hz * cable_length_m / velocity;
}

}  // namespace combwire
