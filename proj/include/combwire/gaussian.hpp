#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <unordered_map>
#include <variant>
#include <vector>

#include "combwire/comb.hpp"
#include "combwire/types.hpp"

namespace combwire {

enum class QuadratureType { Q, P };

/// One term c * A(theta) of an observable, where
/// A(theta) = Q cos(theta) + P sin(theta); A(0) = Q, A(pi/2) = P.
struct QuadTerm {
  ModeLabel mode;
  double angle = 0.0;
  double coeff = 0.0;
};

/// A real linear combination of generalized quadratures. Every observable
/// in this package (nullifiers, homodyne signals, wrong-frequency checks)
/// is one of these.
struct QuadratureCombination {
  std::vector<QuadTerm> terms;
  bool truncated = false;  ///< boundary form with a missing neighbor pair

  QuadratureCombination& add(ModeLabel m, double angle, double coeff);
  static QuadratureCombination quadrature(ModeLabel m, QuadratureType t, double coeff = 1.0);
  void validate() const;
};

/// Shot-noise variance of a combination: vac_var * sum of squared
/// per-mode (Q, P) coefficients. Needs no state.
double vacuum_variance(const QuadratureCombination& obs, double vac_var = 0.5);

enum class CovBackend { Auto, Dense, Block };

struct StateOptions {
  CovBackend backend = CovBackend::Auto;
  std::size_t dense_threshold = 512;  ///< largest mode count stored densely
  bool allow_large_dense = false;     ///< override the dense refusal
  double vac_var = 0.5;               ///< single-quadrature vacuum variance
  double symplectic_tol = 1e-12;
};

/// Zero-mean Gaussian state of M modes, held as the covariance matrix over
/// the 2M quadratures (Q_1..Q_M, P_1..P_M). Small states use a dense
/// matrix; large ones a block-sparse map of per-mode-pair 2x2 blocks,
/// which stays O(M) because every mode of a comb state correlates with at
/// most six others.
class GaussianState {
 public:
  static GaussianState vacuum(std::vector<ModeLabel> modes, const StateOptions& opts = {});

  const std::vector<ModeLabel>& modes() const { return modes_; }
  std::size_t mode_count() const { return modes_.size(); }
  double vac_var() const { return opts_.vac_var; }
  bool is_dense() const { return std::holds_alternative<Dense>(repr_); }

  /// Two-mode squeezing: Q_a - Q_b and P_a + P_b contract by e^{-r},
  /// Q_a + Q_b and P_a - P_b stretch by e^{+r}.
  void two_mode_squeeze(const ModeLabel& a, const ModeLabel& b, double r);

  /// Balanced mixing (a, b) -> ((a+b)/sqrt2, (a-b)/sqrt2) on both
  /// quadrature blocks. By default the two modes must share a frequency
  /// index (polarization mixing).
  void beam_splitter(const ModeLabel& a, const ModeLabel& b, bool allow_frequency_mismatch = false);

  /// Quadrature rotation Q -> Q cos(phi) - P sin(phi),
  /// P -> Q sin(phi) + P cos(phi); phi = pi/2 sends Q -> -P, P -> Q.
  void phase_shift(const ModeLabel& m, double phi);

  double variance(const QuadratureCombination& obs) const;
  double quad_covariance(const ModeLabel& a, QuadratureType ta, const ModeLabel& b,
                         QuadratureType tb) const;

  /// Materializes the full 2M x 2M covariance in (Q.., P..) ordering.
  Eigen::MatrixXd dense_covariance() const;

  std::size_t storage_bytes() const;

  int index_of(const ModeLabel& m) const;  ///< throws invariant_error when unknown

 private:
  struct Dense {
    Eigen::MatrixXd cov;
  };
  struct Block {
    // key packs (lo, hi) mode indices; the 2x2 block is oriented
    // rows = (Q_lo, P_lo), cols = (Q_hi, P_hi).
    std::unordered_map<std::uint64_t, Eigen::Matrix2d> blocks;
    std::vector<std::vector<int>> adj;
  };

  GaussianState() = default;

  void apply(const std::vector<int>& active, const Eigen::MatrixXd& symplectic);

  std::vector<ModeLabel> modes_;
  std::unordered_map<std::uint64_t, int> index_;
  StateOptions opts_;
  std::variant<Dense, Block> repr_;
};

struct BuildOptions {
  StateOptions state;
  bool apply_beam_splitter = true;  ///< false stops at the bare EPR stage
  bool fourier_shift = false;       ///< also rotate into canonical graph form
};

/// Vacuum over both rails of every comb index, two-mode squeezing on all
/// pump pairs, then the polarization beam splitter at every frequency.
GaussianState build_comb_state(const PumpConfig& pumps, const CombSpec& comb,
                               const BuildOptions& opts = {});

/// Applies the local pi/2 rotations (both rails) on the Fourier-shifted
/// index class, turning the dual-rail state into a canonical graph state.
void apply_graph_fourier(GaussianState& state, const PumpConfig& pumps, const CombSpec& comb);

/// Symplectic spectrum of a covariance matrix in (Q.., P..) ordering;
/// every value equals vac_var exactly for a pure state.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Largest |cov(i,j) - cov(j,i)| relative to the largest diagonal entry.
double symmetry_defect(const Eigen::MatrixXd& cov);

}  // namespace combwire
