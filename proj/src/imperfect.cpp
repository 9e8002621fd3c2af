#include "combwire/imperfect.hpp"

#include <cmath>

namespace combwire {

namespace {
constexpr double kPi = 3.14159265358979323846;
const PumpConfig kCanonicalPumps{1, -1, 0.0, 0.0};
}  // namespace

void ImbalanceSpec::validate() const {
  if (!(r > 0)) throw invariant_error("imbalance: r must be positive");
  if (!(std::abs(epsilon) < r))
    throw invariant_error("imbalance: |epsilon| must stay below r (both squeezers active)");
}

QuadratureCombination first_order_nullifier(Pol rail, const ImbalanceSpec& spec) {
  spec.validate();
  const double eps = spec.epsilon;
  QuadratureCombination c;
  if (rail == Pol::Z) {
    c.add(mode_z(0), kPi / 2, 1.0);
    c.add(mode_y(0), kPi / 2, -eps);
    c.add(mode_y(1), 0.0, -0.5 * (1.0 - eps));
    c.add(mode_z(1), 0.0, -0.5 * (1.0 - eps));
    c.add(mode_z(-1), 0.0, -0.5 * (1.0 + eps));
    c.add(mode_y(-1), 0.0, 0.5 * (1.0 + eps));
  } else {
    c.add(mode_y(0), kPi / 2, 1.0);
    c.add(mode_z(0), kPi / 2, -eps);
    c.add(mode_y(1), 0.0, -0.5 * (1.0 - eps));
    c.add(mode_z(1), 0.0, -0.5 * (1.0 - eps));
    c.add(mode_z(-1), 0.0, 0.5 * (1.0 + eps));
    c.add(mode_y(-1), 0.0, -0.5 * (1.0 + eps));
  }
  return c;
}

ImbalanceReport imbalance_report(const ImbalanceSpec& spec, const CombSpec& comb) {
  spec.validate();
  comb.validate();
  if (comb.n_min > -1 || comb.n_max < 1)
    throw invariant_error("imbalance_report: comb must cover the central cell (indices -1..1)");

  PumpConfig pumps = kCanonicalPumps;
  pumps.r_z = spec.r_z();
  pumps.r_y = spec.r_y();

  BuildOptions opts;
  opts.fourier_shift = true;
  const GaussianState state = build_comb_state(pumps, comb, opts);

  ImbalanceReport rep;
  rep.epsilon = spec.epsilon;
  rep.r = spec.r;

  const auto fo = first_order_nullifier(Pol::Z, spec);
  rep.first_order_variance = state.variance(fo) / vacuum_variance(fo, state.vac_var());

  const auto balanced = graph_nullifier(pumps, comb, Pol::Z, 0);
  rep.exact_variance = state.variance(balanced) / vacuum_variance(balanced, state.vac_var());

  rep.residual = rep.first_order_variance - std::exp(-2.0 * spec.r);
  rep.zy_correlation =
      state.quad_covariance(mode_z(0), QuadratureType::Q, mode_y(0), QuadratureType::Q);
  return rep;
}

}  // namespace combwire
