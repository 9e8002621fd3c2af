#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "combwire/imperfect.hpp"

using namespace combwire;

namespace {

CombSpec comb_range(int lo, int hi) {
  CombSpec c;
  c.n_min = lo;
  c.n_max = hi;
  return c;
}

// Closed-form oracles from the Heisenberg solutions of the two pump pairs
// feeding the central cell; independent of the covariance engine.
double first_order_ratio_oracle(double r, double eps) {
  const double a = (1 - eps) * (1 - eps) * std::exp(-2 * eps);
  const double b = (1 + eps) * (1 + eps) * std::exp(2 * eps);
  const double shot = (1 - eps) * (1 - eps) + (1 + eps) * (1 + eps);
  return std::exp(-2 * r) * (a + b) / shot;
}

double balanced_ratio_oracle(double r, double eps) { return std::exp(-2 * r) * std::cosh(2 * eps); }

double zy_correlation_oracle(double r, double eps) {
  return 0.5 * std::sinh(2 * r) * std::sinh(2 * eps);
}

double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::map<ModeLabel, std::pair<double, double>> qp_coeffs(const QuadratureCombination& c) {
  std::map<ModeLabel, std::pair<double, double>> m;
  for (const auto& t : c.terms) {
    auto& [cq, cp] = m[t.mode];
    cq += t.coeff * std::cos(t.angle);
    cp += t.coeff * std::sin(t.angle);
  }
  return m;
}

}  // namespace

TEST_CASE("first-order nullifier coefficients") {
  ImbalanceSpec spec{0.4, 0.01};
  const auto z = first_order_nullifier(Pol::Z, spec);
  auto c = qp_coeffs(z);
  CHECK(c.at(mode_z(0)).second == doctest::Approx(1.0));
  CHECK(c.at(mode_y(0)).second == doctest::Approx(-0.01));
  CHECK(c.at(mode_y(1)).first == doctest::Approx(-0.495));
  CHECK(c.at(mode_z(1)).first == doctest::Approx(-0.495));
  CHECK(c.at(mode_z(-1)).first == doctest::Approx(-0.505));
  CHECK(c.at(mode_y(-1)).first == doctest::Approx(0.505));

  const auto y = first_order_nullifier(Pol::Y, spec);
  c = qp_coeffs(y);
  CHECK(c.at(mode_y(0)).second == doctest::Approx(1.0));
  CHECK(c.at(mode_z(0)).second == doctest::Approx(-0.01));
  CHECK(c.at(mode_y(1)).first == doctest::Approx(-0.495));
  CHECK(c.at(mode_z(1)).first == doctest::Approx(-0.495));
  CHECK(c.at(mode_z(-1)).first == doctest::Approx(0.505));
  CHECK(c.at(mode_y(-1)).first == doctest::Approx(-0.505));

  CHECK_THROWS_AS(first_order_nullifier(Pol::Z, ImbalanceSpec{0.1, 0.2}), invariant_error);
}

TEST_CASE("epsilon = 0 reduces to the balanced pipeline") {
  const CombSpec comb = comb_range(-6, 6);
  ImbalanceSpec spec{0.4, 0.0};
  PumpConfig pumps{1, -1, 0.4, 0.4};

  for (Pol rail : {Pol::Z, Pol::Y}) {
    const auto fo = first_order_nullifier(rail, spec);
    const auto balanced = graph_nullifier(pumps, comb, rail, 0);
    const auto ca = qp_coeffs(fo);
    const auto cb = qp_coeffs(balanced);
    for (const auto& [mode, qp] : cb) {
      const auto it = ca.find(mode);
      REQUIRE(it != ca.end());
      CHECK(it->second.first == doctest::Approx(qp.first).epsilon(1e-15));
      CHECK(it->second.second == doctest::Approx(qp.second).epsilon(1e-15));
    }
  }

  const auto rep = imbalance_report(spec, comb);
  CHECK(rep.zy_correlation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.first_order_variance == doctest::Approx(std::exp(-0.8)).epsilon(1e-12));
  CHECK(rep.exact_variance == doctest::Approx(rep.first_order_variance).epsilon(1e-12));
  CHECK(std::abs(rep.residual) < 1e-12);
}

TEST_CASE("imbalance report matches the closed-form oracles") {
  const CombSpec comb = comb_range(-6, 6);
  for (double eps : {0.005, 0.01, 0.02, -0.015}) {
    ImbalanceSpec spec{0.4, eps};
    const auto rep = imbalance_report(spec, comb);
    CHECK(rep.first_order_variance ==
          doctest::Approx(first_order_ratio_oracle(0.4, eps)).epsilon(1e-10));
    CHECK(rep.exact_variance == doctest::Approx(balanced_ratio_oracle(0.4, eps)).epsilon(1e-10));
    CHECK(rep.zy_correlation == doctest::Approx(zy_correlation_oracle(0.4, eps)).epsilon(1e-10));
  }
}

TEST_CASE("residual scales quadratically, correlation linearly") {
  const CombSpec comb = comb_range(-6, 6);
  std::vector<double> log_eps, log_residual, log_corr;
  for (double eps : {0.005, 0.00889, 0.0158, 0.0281, 0.05}) {
    ImbalanceSpec spec{0.4, eps};
    const auto rep = imbalance_report(spec, comb);
    log_eps.push_back(std::log(eps));
    log_residual.push_back(std::log(std::abs(rep.residual)));
    log_corr.push_back(std::log(std::abs(rep.zy_correlation)));
  }
  CHECK(fitted_slope(log_eps, log_residual) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(fitted_slope(log_eps, log_corr) == doctest::Approx(1.0).epsilon(0.05));

  // doubling epsilon roughly quadruples the residual
  const auto r1 = imbalance_report(ImbalanceSpec{0.4, 0.01}, comb);
  const auto r2 = imbalance_report(ImbalanceSpec{0.4, 0.02}, comb);
  CHECK(r2.residual / r1.residual == doctest::Approx(4.0).epsilon(0.02));
  CHECK(r2.zy_correlation / r1.zy_correlation == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("imbalance spec validation") {
  CHECK_THROWS_AS((ImbalanceSpec{0.0, 0.0}.validate()), invariant_error);
  CHECK_THROWS_AS((ImbalanceSpec{0.3, 0.3}.validate()), invariant_error);
  CHECK_NOTHROW((ImbalanceSpec{0.3, -0.1}.validate()));
  const CombSpec tiny = comb_range(5, 9);
  CHECK_THROWS_AS(imbalance_report(ImbalanceSpec{0.4, 0.01}, tiny), invariant_error);
}
