#include "combwire/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace combwire {

namespace {

// Margin for calling a bound violated; keeps exact-boundary cases (vacuum
// sums equal to a bound) from flipping on rounding noise.
constexpr double kViolationMargin = 1e-9;

std::map<ModeLabel, double> as_map(const std::vector<std::pair<ModeLabel, double>>& coeffs,
                                   const char* what) {
  std::map<ModeLabel, double> m;
  for (const auto& [mode, c] : coeffs)
    if (!m.emplace(mode, c).second)
      throw invariant_error(std::string(what) + ": duplicate mode " + to_string(mode));
  return m;
}

}  // namespace

double vlf_bound(const std::vector<std::pair<ModeLabel, double>>& h,
                 const std::vector<std::pair<ModeLabel, double>>& g,
                 const std::vector<ModeLabel>& side_a) {
  const auto hm = as_map(h, "vlf_bound h");
  const auto gm = as_map(g, "vlf_bound g");

  std::map<ModeLabel, double> products;
  for (const auto& [mode, hc] : hm) products[mode] = 0.0;
  for (const auto& [mode, gc] : gm) products[mode] = 0.0;
  for (auto& [mode, prod] : products) {
    const auto hit = hm.find(mode);
    const auto git = gm.find(mode);
    if (hit != hm.end() && git != gm.end()) prod = hit->second * git->second;
  }

  if (side_a.empty() || side_a.size() >= products.size())
    throw invariant_error("vlf_bound: side A must be a nonempty proper subset");
  for (const auto& mode : side_a)
    if (!products.count(mode))
      throw invariant_error("vlf_bound: side A mode " + to_string(mode) +
                            " not indexed by the test observables");

  double sum_a = 0.0;
  double sum_b = 0.0;
  for (const auto& [mode, prod] : products) {
    const bool in_a = std::find(side_a.begin(), side_a.end(), mode) != side_a.end();
    (in_a ? sum_a : sum_b) += prod;
  }
  return 0.5 * (std::abs(sum_a) + std::abs(sum_b));
}

namespace {

std::vector<std::pair<ModeLabel, double>> quadrature_coeffs(const QuadratureCombination& obs,
                                                            QuadratureType which) {
  std::vector<std::pair<ModeLabel, double>> out;
  for (const auto& t : obs.terms) {
    const double c = t.coeff * (which == QuadratureType::Q ? std::cos(t.angle) : std::sin(t.angle));
    if (std::abs(c) > 1e-12) out.emplace_back(t.mode, c);
  }
  return out;
}

std::string cell_mode_names(const std::vector<ModeLabel>& side) {
  std::string s;
  for (const auto& m : side) {
    if (!s.empty()) s += " ";
    s += to_string(m);
  }
  return s;
}

}  // namespace

CellReport check_unit_cell(const GaussianState& state, const PumpConfig& pumps, const CombSpec& comb,
                           const UnitCell& cell) {
  pumps.validate();
  CellReport report;
  report.cell = cell;

  const int p = pump_index(pumps, cell.center);
  if (cell.n3 + cell.n4 != p)
    throw invariant_error("check_unit_cell: pair (" + std::to_string(cell.n3) + ", " +
                          std::to_string(cell.n4) + ") is not symmetric about the chosen pump");
  if (!comb.contains(cell.n3) || !comb.contains(cell.n4) || cell.n3 == cell.n4) {
    report.evaluable = false;
    return report;
  }

  const PumpCenter other = cell.center == PumpCenter::Z ? PumpCenter::Y : PumpCenter::Z;
  const int p_other = pump_index(pumps, other);

  // Companion pair for the mixed bipartitions: primary through n3, else
  // the alternative through n4.
  int companion = p_other - cell.n3;
  int companion_anchor = cell.n3;
  report.interior = comb.contains(companion) && companion != cell.n3;
  if (!report.interior) {
    companion = p_other - cell.n4;
    companion_anchor = cell.n4;
    report.used_alternative = comb.contains(companion) && companion != cell.n4;
    if (!report.used_alternative) {
      report.evaluable = false;
      return report;
    }
  }
  report.evaluable = true;
  report.companion = companion;

  const ModeLabel m3z = mode_z(cell.n3), m3y = mode_y(cell.n3);
  const ModeLabel m4z = mode_z(cell.n4), m4y = mode_y(cell.n4);
  const ModeLabel m5z = mode_z(companion), m5y = mode_y(companion);

  const auto q_cell = bs_nullifier(pumps, comb, cell.center, cell.n3, QuadratureType::Q);
  const auto p_cell = bs_nullifier(pumps, comb, cell.center, cell.n3, QuadratureType::P);
  const auto p_mixed = bs_nullifier(pumps, comb, other, companion_anchor, QuadratureType::P);

  // vLF units: a single quadrature's vacuum variance is 1/4.
  const double scale = 0.25 / state.vac_var();
  const double vq = scale * state.variance(q_cell);
  const double vp = scale * state.variance(p_cell);
  const double vpm = scale * state.variance(p_mixed);

  const auto h = quadrature_coeffs(q_cell, QuadratureType::Q);
  const auto g_cell = quadrature_coeffs(p_cell, QuadratureType::P);
  const auto g_mixed = quadrature_coeffs(p_mixed, QuadratureType::P);

  const std::string cell_obs = "Q(" + std::to_string(cell.n3) + "," + std::to_string(cell.n4) +
                               "), P(" + std::to_string(cell.n3) + "," + std::to_string(cell.n4) + ")";
  const std::string mixed_obs = "Q(" + std::to_string(cell.n3) + "," + std::to_string(cell.n4) +
                                "), P(" + std::to_string(companion_anchor) + "," +
                                std::to_string(companion) + ")";

  auto add_check = [&](const std::vector<ModeLabel>& side_a, bool mixed) {
    BipartitionCheck chk;
    chk.bipartition = "{" + cell_mode_names(side_a) + "}";
    chk.observables = mixed ? mixed_obs : cell_obs;
    chk.sum = mixed ? vq + vpm : vq + vp;
    chk.bound = vlf_bound(h, mixed ? g_mixed : g_cell, side_a);
    chk.violated = chk.sum < chk.bound - kViolationMargin;
    report.checks.push_back(std::move(chk));
  };

  // Four one-versus-three splits, then the frequency split, with the
  // cell's own Q/P pair.
  add_check({m3z}, false);
  add_check({m4z}, false);
  add_check({m3y}, false);
  add_check({m4y}, false);
  add_check({m3z, m3y}, false);
  // Polarization and diagonal splits need the companion-pump P nullifier;
  // the companion modes ride along with side A (their products vanish).
  add_check({m3z, m4z, m5z}, true);
  add_check({m3z, m4y, m5z, m5y}, true);

  report.inseparable = std::all_of(report.checks.begin(), report.checks.end(),
                                   [](const BipartitionCheck& c) { return c.violated; });
  return report;
}

bool sufficient_condition(const GaussianState& state, const PumpConfig& pumps, const CombSpec& comb,
                          std::span<const int> wire) {
  if (wire.size() < 2) throw invariant_error("sufficient_condition: wire too short");
  bool any = false;
  for (std::size_t i = 0; i + 1 < wire.size(); ++i) {
    const int a = wire[i];
    const int b = wire[i + 1];
    if (a + b != pumps.p_z && a + b != pumps.p_y)
      throw invariant_error("sufficient_condition: sequence is not a wire of these pumps");
    const PumpCenter center = (a + b == pumps.p_z) ? PumpCenter::Z : PumpCenter::Y;
    for (QuadratureType quad : {QuadratureType::Q, QuadratureType::P}) {
      const auto obs = bs_nullifier(pumps, comb, center, a, quad);
      const double ratio = state.variance(obs) / vacuum_variance(obs, state.vac_var());
      if (!(ratio < 0.5)) return false;
      any = true;
    }
  }
  return any;
}

VlfReport full_wire_inseparability(const GaussianState& state, const PumpConfig& pumps,
                                   const CombSpec& comb, std::span<const int> wire) {
  if (wire.size() < 3)
    throw invariant_error("full_wire_inseparability: need at least two overlapping cells");
  VlfReport report;
  for (std::size_t i = 0; i + 1 < wire.size(); ++i) {
    const int a = wire[i];
    const int b = wire[i + 1];
    if (a + b != pumps.p_z && a + b != pumps.p_y)
      throw invariant_error("full_wire_inseparability: sequence is not a wire of these pumps");
    UnitCell cell;
    cell.center = (a + b == pumps.p_z) ? PumpCenter::Z : PumpCenter::Y;
    cell.n3 = a;
    cell.n4 = b;
    auto cr = check_unit_cell(state, pumps, comb, cell);
    if (!cr.evaluable)
      report.notes.push_back("cell (" + std::to_string(a) + ", " + std::to_string(b) +
                             ") skipped: companion pair outside the comb");
    report.evaluable_cells += cr.evaluable ? 1 : 0;
    report.interior_cells += cr.interior ? 1 : 0;
    report.violated_cells += (cr.evaluable && cr.inseparable) ? 1 : 0;
    report.cells.push_back(std::move(cr));
  }
  report.wire_inseparable =
      report.evaluable_cells >= 2 && report.violated_cells == report.evaluable_cells;
  return report;
}

}  // namespace combwire
