#pragma once

#include "combwire/nullifier.hpp"

namespace combwire {

/// Unequal pump squeezing around a mean: r_z = r + eps, r_y = r - eps.
struct ImbalanceSpec {
  double r = 0.4;
  double epsilon = 0.0;

  double r_z() const { return r + epsilon; }
  double r_y() const { return r - epsilon; }
  void validate() const;  ///< requires |epsilon| < r
};

/// First-order-in-epsilon graph nullifier of the central unit cell
/// (modes 0, +-1) for the canonical m = 1 pumps p_z = 1, p_y = -1.
/// At epsilon = 0 it reduces exactly to the balanced graph nullifier.
QuadratureCombination first_order_nullifier(Pol rail, const ImbalanceSpec& spec);

struct ImbalanceReport {
  double epsilon = 0.0;
  double r = 0.0;
  double first_order_variance = 0.0;  ///< ratio to its own shot noise
  double exact_variance = 0.0;        ///< balanced-form nullifier on the imbalanced state
  double residual = 0.0;              ///< first_order_variance - e^{-2r}
  double zy_correlation = 0.0;        ///< Cov(Q_{0z}, Q_{0y})
};

/// Builds the exact imbalanced state over `comb` (canonical pumps) and
/// reports the first-order nullifier ratio, the degradation of the
/// balanced nullifier, and the spurious 0z-0y covariance.
ImbalanceReport imbalance_report(const ImbalanceSpec& spec, const CombSpec& comb);

}  // namespace combwire
