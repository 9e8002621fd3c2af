#include "combwire/gaussian.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>

namespace combwire {

namespace {

std::uint64_t mode_key(const ModeLabel& m) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(m.n)) << 1) |
         static_cast<std::uint64_t>(m.pol == Pol::Y);
}

std::uint64_t pair_key(int lo, int hi) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo)) << 32) |
         static_cast<std::uint32_t>(hi);
}

// Per-mode symplectic form in the interleaved (Q, P) layout.
Eigen::MatrixXd interleaved_form(int n_modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

void check_symplectic(const Eigen::MatrixXd& s, double tol) {
  const int n_modes = static_cast<int>(s.rows()) / 2;
  const Eigen::MatrixXd j = interleaved_form(n_modes);
  const double defect = (s * j * s.transpose() - j).cwiseAbs().maxCoeff();
  if (!(defect <= tol))
    throw invariant_error("symplectic defect " + std::to_string(defect) + " exceeds tolerance");
  const double det_defect = std::abs(s.determinant() - 1.0);
  if (!(det_defect <= tol))
    throw invariant_error("symplectic map determinant departs from 1 by " +
                          std::to_string(det_defect));
}

}  // namespace

QuadratureCombination& QuadratureCombination::add(ModeLabel m, double angle, double coeff) {
  terms.push_back({m, angle, coeff});
  return *this;
}

QuadratureCombination QuadratureCombination::quadrature(ModeLabel m, QuadratureType t, double coeff) {
  QuadratureCombination c;
  c.add(m, t == QuadratureType::Q ? 0.0 : std::acos(-1.0) / 2.0, coeff);
  return c;
}

void QuadratureCombination::validate() const {
  for (const auto& t : terms)
    if (t.coeff != 0.0) return;
  throw invariant_error("quadrature combination has no nonzero coefficient");
}

namespace {

// Collapses terms to per-mode (cQ, cP) pairs, keyed by state index;
// ordered map keeps downstream sums deterministic.
std::map<int, Eigen::Vector2d> collect_coefficients(const QuadratureCombination& obs,
                                                    const GaussianState* state) {
  obs.validate();
  std::map<int, Eigen::Vector2d> coeffs;
  int fallback = 0;
  std::map<std::uint64_t, int> local;
  for (const auto& t : obs.terms) {
    int idx;
    if (state != nullptr) {
      idx = state->index_of(t.mode);
    } else {
      auto [it, inserted] = local.try_emplace(mode_key(t.mode), fallback);
      if (inserted) ++fallback;
      idx = it->second;
    }
    auto [it, inserted] = coeffs.try_emplace(idx, Eigen::Vector2d::Zero());
    it->second.x() += t.coeff * std::cos(t.angle);
    it->second.y() += t.coeff * std::sin(t.angle);
  }
  return coeffs;
}

}  // namespace

double vacuum_variance(const QuadratureCombination& obs, double vac_var) {
  double sum = 0.0;
  for (const auto& [idx, c] : collect_coefficients(obs, nullptr)) sum += c.squaredNorm();
  return vac_var * sum;
}

GaussianState GaussianState::vacuum(std::vector<ModeLabel> modes, const StateOptions& opts) {
  if (modes.empty()) throw invariant_error("vacuum: mode list is empty");
  GaussianState s;
  s.modes_ = std::move(modes);
  s.opts_ = opts;
  for (std::size_t i = 0; i < s.modes_.size(); ++i) {
    auto [it, inserted] = s.index_.try_emplace(mode_key(s.modes_[i]), static_cast<int>(i));
    if (!inserted)
      throw invariant_error("vacuum: duplicate mode label " + to_string(s.modes_[i]));
  }

  const std::size_t m = s.modes_.size();
  bool dense = false;
  switch (opts.backend) {
    case CovBackend::Auto:
      dense = m <= opts.dense_threshold;
      break;
    case CovBackend::Dense:
      if (m > opts.dense_threshold && !opts.allow_large_dense)
        throw invariant_error("dense covariance refused for " + std::to_string(m) +
                              " modes (threshold " + std::to_string(opts.dense_threshold) +
                              "); use the block backend or override");
      dense = true;
      break;
    case CovBackend::Block:
      dense = false;
      break;
  }

  if (dense) {
    Dense d;
    d.cov = opts.vac_var * Eigen::MatrixXd::Identity(2 * m, 2 * m);
    s.repr_ = std::move(d);
  } else {
    Block b;
    b.adj.resize(m);
    b.blocks.reserve(4 * m);
    for (std::size_t i = 0; i < m; ++i)
      b.blocks.emplace(pair_key(static_cast<int>(i), static_cast<int>(i)),
                       opts.vac_var * Eigen::Matrix2d::Identity());
    s.repr_ = std::move(b);
  }
  return s;
}

int GaussianState::index_of(const ModeLabel& m) const {
  const auto it = index_.find(mode_key(m));
  if (it == index_.end()) throw invariant_error("unknown mode label " + to_string(m));
  return it->second;
}

void GaussianState::apply(const std::vector<int>& active, const Eigen::MatrixXd& s) {
  check_symplectic(s, opts_.symplectic_tol);
  const int k = static_cast<int>(active.size());

  if (auto* d = std::get_if<Dense>(&repr_)) {
    const std::size_t m = modes_.size();
    // Global quadrature indices of the active modes, interleaved (Q, P).
    std::vector<int> rows(2 * k);
    for (int i = 0; i < k; ++i) {
      rows[2 * i] = active[i];
      rows[2 * i + 1] = active[i] + static_cast<int>(m);
    }
    Eigen::MatrixXd strip(2 * k, 2 * m);
    for (int r = 0; r < 2 * k; ++r) strip.row(r) = d->cov.row(rows[r]);
    strip = s * strip;
    for (int r = 0; r < 2 * k; ++r) d->cov.row(rows[r]) = strip.row(r);
    Eigen::MatrixXd cols(2 * m, 2 * k);
    for (int c = 0; c < 2 * k; ++c) cols.col(c) = d->cov.col(rows[c]);
    cols = cols * s.transpose();
    for (int c = 0; c < 2 * k; ++c) d->cov.col(rows[c]) = cols.col(c);
    return;
  }

  auto& b = std::get<Block>(repr_);
  auto get_block = [&](int i, int j) -> Eigen::Matrix2d {
    const auto it = b.blocks.find(pair_key(std::min(i, j), std::max(i, j)));
    if (it == b.blocks.end()) return Eigen::Matrix2d::Zero();
    return i <= j ? it->second : Eigen::Matrix2d(it->second.transpose());
  };
  auto set_block = [&](int i, int j, const Eigen::Matrix2d& v) {
    if (i <= j)
      b.blocks[pair_key(i, j)] = v;
    else
      b.blocks[pair_key(j, i)] = v.transpose();
    if (i != j) {
      auto link = [&](int from, int to) {
        auto& lst = b.adj[static_cast<std::size_t>(from)];
        if (std::find(lst.begin(), lst.end(), to) == lst.end()) lst.push_back(to);
      };
      link(i, j);
      link(j, i);
    }
  };

  // Spectator neighbors: B(a, x) <- sum_j S_aj B(j, x).
  std::vector<int> outside;
  for (int a : active)
    for (int x : b.adj[static_cast<std::size_t>(a)])
      if (std::find(active.begin(), active.end(), x) == active.end() &&
          std::find(outside.begin(), outside.end(), x) == outside.end())
        outside.push_back(x);
  std::sort(outside.begin(), outside.end());

  for (int x : outside) {
    std::vector<Eigen::Matrix2d> updated(k);
    for (int i = 0; i < k; ++i) {
      Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
      for (int j = 0; j < k; ++j)
        acc += s.block<2, 2>(2 * i, 2 * j) * get_block(active[j], x);
      updated[i] = acc;
    }
    for (int i = 0; i < k; ++i) set_block(active[i], x, updated[i]);
  }

  // Active core: C <- S C S^T.
  Eigen::MatrixXd core(2 * k, 2 * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      core.block<2, 2>(2 * i, 2 * j) = get_block(active[i], active[j]);
  core = s * core * s.transpose();
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      set_block(active[i], active[j], core.block<2, 2>(2 * i, 2 * j));
}

void GaussianState::two_mode_squeeze(const ModeLabel& a, const ModeLabel& b, double r) {
  if (a == b) throw invariant_error("two_mode_squeeze: modes must differ");
  if (!std::isfinite(r)) throw invariant_error("two_mode_squeeze: r must be finite");
  const int ia = index_of(a);
  const int ib = index_of(b);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
  // Q_a - Q_b and P_a + P_b contract by e^{-r}.
  s(0, 0) = ch;
  s(0, 2) = sh;
  s(2, 0) = sh;
  s(2, 2) = ch;
  s(1, 1) = ch;
  s(1, 3) = -sh;
  s(3, 1) = -sh;
  s(3, 3) = ch;
  apply({ia, ib}, s);
}

void GaussianState::beam_splitter(const ModeLabel& a, const ModeLabel& b,
                                  bool allow_frequency_mismatch) {
  if (a == b) throw invariant_error("beam_splitter: modes must differ");
  if (a.n != b.n && !allow_frequency_mismatch)
    throw invariant_error("beam_splitter: modes " + to_string(a) + " and " + to_string(b) +
                          " differ in frequency; pass the override to mix them anyway");
  const int ia = index_of(a);
  const int ib = index_of(b);
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
  for (int q = 0; q < 2; ++q) {  // same map on Q and P
    s(q, q) = h;
    s(q, q + 2) = h;
    s(q + 2, q) = h;
    s(q + 2, q + 2) = -h;
  }
  apply({ia, ib}, s);
}

void GaussianState::phase_shift(const ModeLabel& m, double phi) {
  if (!std::isfinite(phi)) throw invariant_error("phase_shift: phi must be finite");
  const int im = index_of(m);
  Eigen::MatrixXd s(2, 2);
  s << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  apply({im}, s);
}

double GaussianState::variance(const QuadratureCombination& obs) const {
  const auto coeffs = collect_coefficients(obs, this);
  double sum = 0.0;

  if (const auto* d = std::get_if<Dense>(&repr_)) {
    const int m = static_cast<int>(modes_.size());
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      for (auto jt = it; jt != coeffs.end(); ++jt) {
        const int i = it->first;
        const int j = jt->first;
        Eigen::Matrix2d blk;
        blk << d->cov(i, j), d->cov(i, j + m), d->cov(i + m, j), d->cov(i + m, j + m);
        const double contrib = it->second.dot(blk * jt->second);
        sum += (i == j) ? contrib : 2.0 * contrib;
      }
    }
    return sum;
  }

  const auto& b = std::get<Block>(repr_);
  for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
    for (auto jt = it; jt != coeffs.end(); ++jt) {
      const auto found = b.blocks.find(pair_key(it->first, jt->first));
      if (found == b.blocks.end()) continue;
      const double contrib = it->second.dot(found->second * jt->second);
      sum += (it->first == jt->first) ? contrib : 2.0 * contrib;
    }
  }
  return sum;
}

double GaussianState::quad_covariance(const ModeLabel& a, QuadratureType ta, const ModeLabel& b,
                                      QuadratureType tb) const {
  const int ia = index_of(a);
  const int ib = index_of(b);
  const int ra = ta == QuadratureType::Q ? 0 : 1;
  const int rb = tb == QuadratureType::Q ? 0 : 1;
  if (const auto* d = std::get_if<Dense>(&repr_)) {
    const int m = static_cast<int>(modes_.size());
    return d->cov(ia + ra * m, ib + rb * m);
  }
  const auto& blk = std::get<Block>(repr_);
  const auto it = blk.blocks.find(pair_key(std::min(ia, ib), std::max(ia, ib)));
  if (it == blk.blocks.end()) return 0.0;
  return ia <= ib ? it->second(ra, rb) : it->second(rb, ra);
}

Eigen::MatrixXd GaussianState::dense_covariance() const {
  const int m = static_cast<int>(modes_.size());
  if (const auto* d = std::get_if<Dense>(&repr_)) return d->cov;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  const auto& b = std::get<Block>(repr_);
  for (const auto& [key, blk] : b.blocks) {
    const int i = static_cast<int>(key >> 32);
    const int j = static_cast<int>(key & 0xffffffffu);
    cov(i, j) = blk(0, 0);
    cov(i, j + m) = blk(0, 1);
    cov(i + m, j) = blk(1, 0);
    cov(i + m, j + m) = blk(1, 1);
    if (i != j) {
      cov(j, i) = blk(0, 0);
      cov(j + m, i) = blk(0, 1);
      cov(j, i + m) = blk(1, 0);
      cov(j + m, i + m) = blk(1, 1);
    }
  }
  return cov;
}

std::size_t GaussianState::storage_bytes() const {
  if (const auto* d = std::get_if<Dense>(&repr_))
    return static_cast<std::size_t>(d->cov.size()) * sizeof(double);
  const auto& b = std::get<Block>(repr_);
  std::size_t adj = 0;
  for (const auto& lst : b.adj) adj += lst.capacity() * sizeof(int);
  return b.blocks.size() * (sizeof(std::uint64_t) + sizeof(Eigen::Matrix2d) + 2 * sizeof(void*)) +
         adj;
}

GaussianState build_comb_state(const PumpConfig& pumps, const CombSpec& comb,
                               const BuildOptions& opts) {
  pumps.validate();
  comb.validate();
  std::vector<ModeLabel> modes;
  modes.reserve(2 * static_cast<std::size_t>(comb.index_count()));
  for (int n = comb.n_min; n <= comb.n_max; ++n) {
    modes.push_back(mode_z(n));
    modes.push_back(mode_y(n));
  }
  GaussianState state = GaussianState::vacuum(std::move(modes), opts.state);
  for (const auto& [k, partner] : epr_pairs(pumps.p_z, comb))
    state.two_mode_squeeze(mode_z(k), mode_z(partner), pumps.r_z);
  for (const auto& [k, partner] : epr_pairs(pumps.p_y, comb))
    state.two_mode_squeeze(mode_y(k), mode_y(partner), pumps.r_y);
  if (opts.apply_beam_splitter)
    for (int n = comb.n_min; n <= comb.n_max; ++n) state.beam_splitter(mode_z(n), mode_y(n));
  if (opts.fourier_shift) apply_graph_fourier(state, pumps, comb);
  return state;
}

void apply_graph_fourier(GaussianState& state, const PumpConfig& pumps, const CombSpec& comb) {
  const double half_pi = std::acos(-1.0) / 2.0;
  for (int n : fourier_shifted_indices(pumps, comb)) {
    state.phase_shift(mode_z(n), half_pi);
    state.phase_shift(mode_y(n), half_pi);
  }
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const int m2 = static_cast<int>(cov.rows());
  if (m2 % 2 != 0 || cov.cols() != m2)
    throw invariant_error("symplectic_eigenvalues: covariance must be square and even-sized");
  const int m = m2 / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(m2, m2);
  omega.topRightCorner(m, m) = Eigen::MatrixXd::Identity(m, m);
  omega.bottomLeftCorner(m, m) = -Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd a = omega * cov;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  std::vector<double> moduli(static_cast<std::size_t>(m2));
  for (int i = 0; i < m2; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());
  // Eigenvalues come in +-i nu pairs; keep one modulus per pair.
  std::vector<double> nus(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) nus[static_cast<std::size_t>(i)] = moduli[static_cast<std::size_t>(2 * i)];
  return nus;
}

double symmetry_defect(const Eigen::MatrixXd& cov) {
  const double scale = std::max(cov.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  return (cov - cov.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace combwire
