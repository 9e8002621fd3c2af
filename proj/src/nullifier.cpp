#include "combwire/nullifier.hpp"

#include <cmath>

namespace combwire {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_in_range(const CombSpec& comb, int n, const char* what) {
  if (!comb.contains(n))
    throw invariant_error(std::string(what) + ": index " + std::to_string(n) +
                          " outside comb range [" + std::to_string(comb.n_min) + ", " +
                          std::to_string(comb.n_max) + "]");
}
}  // namespace

int pump_index(const PumpConfig& pumps, PumpCenter c) {
  return c == PumpCenter::Z ? pumps.p_z : pumps.p_y;
}

double pump_r(const PumpConfig& pumps, PumpCenter c) {
  return c == PumpCenter::Z ? pumps.r_z : pumps.r_y;
}

QuadratureCombination two_tone_template(int n_plus, int n_minus, PumpCenter center, double theta,
                                        double theta_lo) {
  const double s = center == PumpCenter::Z ? 1.0 : -1.0;
  QuadratureCombination c;
  c.add(mode_z(n_plus), theta + theta_lo, 1.0);
  c.add(mode_y(n_plus), theta + theta_lo, s);
  c.add(mode_z(n_minus), -theta + theta_lo, -1.0);
  c.add(mode_y(n_minus), -theta + theta_lo, -s);
  return c;
}

QuadratureCombination epr_nullifier(const PumpConfig& pumps, const CombSpec& comb, PumpCenter center,
                                    int n, QuadratureType quad) {
  pumps.validate();
  const int p = pump_index(pumps, center);
  const int partner = p - n;
  require_in_range(comb, n, "epr_nullifier");
  require_in_range(comb, partner, "epr_nullifier");
  if (partner == n) throw invariant_error("epr_nullifier: degenerate self-pair");
  const Pol pol = center == PumpCenter::Z ? Pol::Z : Pol::Y;
  QuadratureCombination c;
  if (quad == QuadratureType::Q) {
    c.add({n, pol}, 0.0, 1.0);
    c.add({partner, pol}, 0.0, -1.0);
  } else {
    c.add({n, pol}, kPi / 2, 1.0);
    c.add({partner, pol}, kPi / 2, 1.0);
  }
  return c;
}

QuadratureCombination bs_nullifier(const PumpConfig& pumps, const CombSpec& comb, PumpCenter center,
                                   int n, double theta, double theta_lo) {
  pumps.validate();
  const int p = pump_index(pumps, center);
  require_in_range(comb, n, "bs_nullifier");
  require_in_range(comb, p - n, "bs_nullifier");
  if (p - n == n) throw invariant_error("bs_nullifier: degenerate self-pair");
  return two_tone_template(n, p - n, center, theta, theta_lo);
}

QuadratureCombination bs_nullifier(const PumpConfig& pumps, const CombSpec& comb, PumpCenter center,
                                   int n, QuadratureType quad) {
  return bs_nullifier(pumps, comb, center, n, quad == QuadratureType::Q ? 0.0 : kPi / 2);
}

QuadratureCombination graph_nullifier(const PumpConfig& pumps, const CombSpec& comb, Pol rail, int n) {
  pumps.validate();
  require_in_range(comb, n, "graph_nullifier");
  const int nz = pumps.p_z - n;
  const int ny = pumps.p_y - n;
  const bool have_z = comb.contains(nz) && nz != n;
  const bool have_y = comb.contains(ny) && ny != n;
  if (!have_z && !have_y)
    throw invariant_error("graph_nullifier: both neighbor pairs of node " + std::to_string(n) +
                          " fall outside the comb");

  QuadratureCombination c;
  c.add({n, rail}, kPi / 2, 1.0);
  if (have_z) {
    c.add(mode_z(nz), 0.0, -0.5);
    c.add(mode_y(nz), 0.0, -0.5);
  }
  if (have_y) {
    // The y-pump neighbors carry the sign structure that distinguishes
    // the rails: the same-rail edge is +1/2, the cross-rail edge -1/2.
    c.add(mode_z(ny), 0.0, rail == Pol::Z ? -0.5 : 0.5);
    c.add(mode_y(ny), 0.0, rail == Pol::Z ? 0.5 : -0.5);
  }
  c.truncated = !(have_z && have_y);
  return c;
}

QuadratureCombination wrong_frequency_combination(const PumpConfig& pumps, const CombSpec& comb,
                                                  int n_i, int n_ii, PumpCenter center, double theta,
                                                  double theta_lo) {
  pumps.validate();
  require_in_range(comb, n_i, "wrong_frequency_combination");
  require_in_range(comb, n_ii, "wrong_frequency_combination");
  if (n_i == n_ii) throw invariant_error("wrong_frequency_combination: indices must differ");
  if (n_i + n_ii == pumps.p_z || n_i + n_ii == pumps.p_y)
    throw invariant_error("wrong_frequency_combination: pair (" + std::to_string(n_i) + ", " +
                          std::to_string(n_ii) + ") satisfies a phasematching sum; it is a real nullifier");
  return two_tone_template(n_i, n_ii, center, theta, theta_lo);
}

double squeezing_db(const GaussianState& state, const QuadratureCombination& obs) {
  return 10.0 * std::log10(state.variance(obs) / vacuum_variance(obs, state.vac_var()));
}

namespace {

void append_rows(std::vector<NullifierRow>& rows, const GaussianState& state,
                 const PumpConfig& pumps, const CombSpec& comb, PumpCenter center) {
  const int p = pump_index(pumps, center);
  for (int n = ceil_half(p); n <= comb.n_max; ++n) {
    if (!comb.contains(p - n) || p - n == n) continue;
    for (QuadratureType quad : {QuadratureType::Q, QuadratureType::P}) {
      const auto obs = bs_nullifier(pumps, comb, center, n, quad);
      const double var = state.variance(obs);
      const double shot = vacuum_variance(obs, state.vac_var());
      rows.push_back({quad == QuadratureType::Q ? "bs_q" : "bs_p",
                      center == PumpCenter::Z ? 'z' : 'y', n,
                      quad == QuadratureType::Q ? 0.0 : kPi / 2, var, shot,
                      10.0 * std::log10(var / shot)});
    }
  }
}

}  // namespace

std::vector<NullifierRow> bs_nullifier_table(const GaussianState& state, const PumpConfig& pumps,
                                             const CombSpec& comb) {
  std::vector<NullifierRow> rows;
  append_rows(rows, state, pumps, comb, PumpCenter::Z);
  append_rows(rows, state, pumps, comb, PumpCenter::Y);
  return rows;
}

std::vector<NullifierRow> graph_nullifier_table(const GaussianState& shifted, const PumpConfig& pumps,
                                                const CombSpec& comb) {
  std::vector<NullifierRow> rows;
  for (Pol rail : {Pol::Z, Pol::Y}) {
    for (int n = comb.n_min; n <= comb.n_max; ++n) {
      if (!comb.contains(pumps.p_z - n) || !comb.contains(pumps.p_y - n)) continue;
      const auto obs = graph_nullifier(pumps, comb, rail, n);
      if (obs.truncated) continue;  // degenerate neighbor on an even pump
      const double var = shifted.variance(obs);
      const double shot = vacuum_variance(obs, shifted.vac_var());
      rows.push_back({rail == Pol::Z ? "graph_z" : "graph_y", pol_char(rail), n, 0.0, var, shot,
                      10.0 * std::log10(var / shot)});
    }
  }
  return rows;
}

}  // namespace combwire
