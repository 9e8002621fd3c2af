#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "combwire/nullifier.hpp"

namespace combwire {

/// Four-mode unit cell {n3, n4} x {z, y} with n3 + n4 equal to the center
/// pump index. n3 is the chain-order-first member of the pair.
struct UnitCell {
  PumpCenter center = PumpCenter::Y;
  int n3 = 0;
  int n4 = 0;
};

/// Separability bound 1/2 (|sum_A h_j g_j| + |sum_B h_j g_j|) for test
/// observables sum h_j Q_j and sum g_j P_j, in units where a single
/// quadrature's vacuum variance is 1/4. Modes missing from either list
/// carry coefficient zero; side_b is the complement of side_a over the
/// union of both index sets.
double vlf_bound(const std::vector<std::pair<ModeLabel, double>>& h,
                 const std::vector<std::pair<ModeLabel, double>>& g,
                 const std::vector<ModeLabel>& side_a);

struct BipartitionCheck {
  std::string bipartition;
  std::string observables;
  double sum = 0.0;  ///< measured variance sum, vLF units
  double bound = 0.0;
  bool violated = false;
};

struct CellReport {
  UnitCell cell;
  bool evaluable = false;
  bool interior = false;         ///< primary companion pair in range
  bool used_alternative = false; ///< mixed splits fell back to the n4 companion
  int companion = 0;             ///< n5 actually used for the mixed splits
  std::vector<BipartitionCheck> checks;
  bool inseparable = false;
};

struct VlfReport {
  std::vector<CellReport> cells;
  int evaluable_cells = 0;
  int interior_cells = 0;
  int violated_cells = 0;
  bool wire_inseparable = false;
  std::vector<std::string> notes;
};

/// Evaluates all seven bipartition bounds of one unit cell. Measured
/// variances are rescaled by (1/4)/vac_var before comparison; the cell is
/// inseparable only when every bound is violated.
CellReport check_unit_cell(const GaussianState& state, const PumpConfig& pumps, const CombSpec& comb,
                           const UnitCell& cell);

/// True when every four-term nullifier along the wire (both centerings,
/// Q and P types) sits strictly below the -3 dB level (ratio < 1/2).
bool sufficient_condition(const GaussianState& state, const PumpConfig& pumps, const CombSpec& comb,
                          std::span<const int> wire);

/// Runs check_unit_cell over every adjacent pair along the wire; the wire
/// is inseparable when all evaluable overlapping cells are.
VlfReport full_wire_inseparability(const GaussianState& state, const PumpConfig& pumps,
                                   const CombSpec& comb, std::span<const int> wire);

}  // namespace combwire
