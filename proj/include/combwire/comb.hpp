#pragma once

#include <utility>
#include <vector>

#include "combwire/types.hpp"

namespace combwire {

/// Weighted edge of a wire graph; weight is exactly +1/2 or -1/2.
struct WireEdge {
  ModeLabel a;
  ModeLabel b;
  double weight = 0.5;

  friend bool operator==(const WireEdge&, const WireEdge&) = default;
};

/// Dual-rail cluster graph of a single quantum wire. `sequence` holds the
/// frequency indices in chain order; `nodes` carries both rails per index.
struct WireGraph {
  std::vector<ModeLabel> nodes;
  std::vector<WireEdge> edges;
  std::vector<int> sequence;
};

/// All signal pairs (k, p-k) of pump index p that fit in the comb window,
/// k >= ceil(p/2). The degenerate self-pair k == p-k is skipped.
std::vector<std::pair<int, int>> epr_pairs(int pump_index, const CombSpec& comb);

/// True when `pump_index` is even, i.e. it has a degenerate half-index
/// mode inside the comb that epr_pairs() skips.
bool has_degenerate_pair(int pump_index, const CombSpec& comb);

/// Connected components of the pair graph n <-> (p_z - n), n <-> (p_y - n),
/// each returned as an ordered chain. Chains start from the member with the
/// smallest |n| (ties resolved toward the larger n) and extend with the
/// z-pump edge on the left and the y-pump edge on the right, which
/// reproduces the natural frequency-staggered ordering.
std::vector<std::vector<int>> extract_wires(const PumpConfig& pumps, const CombSpec& comb);

/// Dual-rail cluster graph of every wire. Across a z-pump edge all four
/// rail combinations carry weight +1/2; across a y-pump edge the same-rail
/// weights are +1/2 and the cross-rail weights -1/2.
std::vector<WireGraph> wire_graphs(const PumpConfig& pumps, const CombSpec& comb);

/// Frequency indices whose modes receive the local pi/2 phase shift that
/// maps the dual-rail state onto its canonical graph form. For odd pump
/// indices this is the parity class of ceil(p_z / 2); even pump indices
/// fall back to a per-chain alternation anchored at the member nearest
/// p_z / 2 (ties toward the larger index).
std::vector<int> fourier_shifted_indices(const PumpConfig& pumps, const CombSpec& comb);

}  // namespace combwire
