#pragma once

#include <string>
#include <vector>

#include "combwire/gaussian.hpp"

namespace combwire {

/// Which pump a two-tone observable is centered on.
enum class PumpCenter { Z, Y };

int pump_index(const PumpConfig& pumps, PumpCenter c);
double pump_r(const PumpConfig& pumps, PumpCenter c);

/// The common four-term template behind every two-tone observable:
///   [A_z(th+lo) + s A_y(th+lo)]_{n_plus} - [A_z(-th+lo) + s A_y(-th+lo)]_{n_minus}
/// with s = +1 for a z-centered and s = -1 for a y-centered form.
QuadratureCombination two_tone_template(int n_plus, int n_minus, PumpCenter center, double theta,
                                        double theta_lo = 0.0);

/// Joint EPR operator of the bare pump-j pair (n, p_j - n):
/// Q_n - Q_{p-n} or P_n + P_{p-n}, both modes of polarization j.
QuadratureCombination epr_nullifier(const PumpConfig& pumps, const CombSpec& comb, PumpCenter center,
                                    int n, QuadratureType quad);

/// Post-beam-splitter nullifier of the pair (n, p - n) at generalized
/// quadrature angle theta (mode n at +theta, the partner at -theta).
QuadratureCombination bs_nullifier(const PumpConfig& pumps, const CombSpec& comb, PumpCenter center,
                                   int n, double theta, double theta_lo = 0.0);
QuadratureCombination bs_nullifier(const PumpConfig& pumps, const CombSpec& comb, PumpCenter center,
                                   int n, QuadratureType quad);

/// Canonical graph nullifier P_(n,rail) - sum of half-weighted neighbor Qs,
/// meaningful on the Fourier-shifted state. When one neighbor pair lies
/// outside the comb the truncated remainder is returned with the
/// `truncated` flag set.
QuadratureCombination graph_nullifier(const PumpConfig& pumps, const CombSpec& comb, Pol rail, int n);

/// Same four-term template over a pair that satisfies neither
/// phasematching sum; rejects pairs that do (those are real nullifiers).
QuadratureCombination wrong_frequency_combination(const PumpConfig& pumps, const CombSpec& comb,
                                                  int n_i, int n_ii, PumpCenter center, double theta,
                                                  double theta_lo = 0.0);

/// 10 log10 of the observable's variance over its own shot noise.
double squeezing_db(const GaussianState& state, const QuadratureCombination& obs);

struct NullifierRow {
  std::string kind;  // "bs_q", "bs_p", "graph_z", "graph_y"
  char pump_center;  // 'z' or 'y'; for graph rows the rail
  int n = 0;
  double theta = 0.0;
  double variance = 0.0;
  double shot_noise = 0.0;
  double db = 0.0;
};

/// Every interior four-term nullifier (both centerings, Q and P types)
/// evaluated on the dual-rail state.
std::vector<NullifierRow> bs_nullifier_table(const GaussianState& state, const PumpConfig& pumps,
                                             const CombSpec& comb);

/// Every interior canonical nullifier (both rails) evaluated on the
/// Fourier-shifted state.
std::vector<NullifierRow> graph_nullifier_table(const GaussianState& shifted, const PumpConfig& pumps,
                                                const CombSpec& comb);

}  // namespace combwire
