#include "combwire/comb.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <unordered_set>

namespace combwire {

Pol pol_from_char(char c) {
  if (c == 'z' || c == 'Z') return Pol::Z;
  if (c == 'y' || c == 'Y') return Pol::Y;
  throw invariant_error(std::string("unknown polarization label '") + c + "'");
}

std::string to_string(const ModeLabel& m) {
  return std::to_string(m.n) + pol_char(m.pol);
}

void CombSpec::validate() const {
  if (!(delta_omega > 0)) throw invariant_error("comb: delta_omega must be positive");
  if (n_min >= n_max) throw invariant_error("comb: n_min must be below n_max");
}

void PumpConfig::validate() const {
  const int spacing = std::abs(p_y - p_z);
  if (spacing == 0 || spacing % 2 != 0)
    throw invariant_error("pumps: |p_y - p_z| must be even and >= 2");
  if (r_z < 0 || r_y < 0) throw invariant_error("pumps: squeezing parameters must be >= 0");
}

int PumpConfig::wire_count() const {
  validate();
  return std::abs(p_y - p_z) / 2;
}

bool has_degenerate_pair(int pump_index, const CombSpec& comb) {
  return pump_index % 2 == 0 && comb.contains(pump_index / 2);
}

std::vector<std::pair<int, int>> epr_pairs(int pump_index, const CombSpec& comb) {
  comb.validate();
  std::vector<std::pair<int, int>> pairs;
  const int k_lo = std::max(ceil_half(pump_index), comb.n_min);
  const int k_hi = std::min(comb.n_max, pump_index - comb.n_min);
  for (int k = k_lo; k <= k_hi; ++k) {
    const int partner = pump_index - k;
    if (partner == k) continue;  // degenerate self-pair: not part of any wire
    pairs.emplace_back(k, partner);
  }
  return pairs;
}

namespace {

// Partner of n under pump p, or nothing at the comb edge / degenerate point.
std::optional<int> pair_partner(int n, int p, const CombSpec& comb) {
  const int partner = p - n;
  if (partner == n || !comb.contains(partner)) return std::nullopt;
  return partner;
}

// Walks from `start` taking a `first_z` or y edge first, then alternating.
std::vector<int> walk_chain(int start, bool first_z, const PumpConfig& pumps, const CombSpec& comb,
                            std::unordered_set<int>& visited) {
  std::vector<int> out;
  int current = start;
  bool use_z = first_z;
  while (true) {
    const auto next = pair_partner(current, use_z ? pumps.p_z : pumps.p_y, comb);
    if (!next || visited.count(*next)) break;
    out.push_back(*next);
    visited.insert(*next);
    current = *next;
    use_z = !use_z;
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> extract_wires(const PumpConfig& pumps, const CombSpec& comb) {
  pumps.validate();
  comb.validate();

  // Anchor candidates: smallest |n| first, ties toward the larger n.
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(comb.index_count()));
  for (int n = comb.n_min; n <= comb.n_max; ++n) order.push_back(n);
  std::sort(order.begin(), order.end(), [](int a, int b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a > b;
  });

  std::unordered_set<int> visited;
  std::vector<std::vector<int>> chains;
  for (int anchor : order) {
    if (visited.count(anchor)) continue;
    visited.insert(anchor);
    auto left = walk_chain(anchor, /*first_z=*/true, pumps, comb, visited);
    auto right = walk_chain(anchor, /*first_z=*/false, pumps, comb, visited);
    std::vector<int> chain;
    chain.reserve(left.size() + right.size() + 1);
    chain.insert(chain.end(), left.rbegin(), left.rend());
    chain.push_back(anchor);
    chain.insert(chain.end(), right.begin(), right.end());
    chains.push_back(std::move(chain));
  }
  return chains;
}

std::vector<WireGraph> wire_graphs(const PumpConfig& pumps, const CombSpec& comb) {
  std::vector<WireGraph> graphs;
  for (const auto& chain : extract_wires(pumps, comb)) {
    WireGraph g;
    g.sequence = chain;
    g.nodes.reserve(chain.size() * 2);
    for (int n : chain) {
      g.nodes.push_back(mode_z(n));
      g.nodes.push_back(mode_y(n));
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const int a = chain[i];
      const int b = chain[i + 1];
      const bool z_edge = (a + b == pumps.p_z);
      // z-pump edges carry +1/2 everywhere; y-pump edges flip the
      // cross-rail sign.
      g.edges.push_back({mode_z(a), mode_z(b), 0.5});
      g.edges.push_back({mode_z(a), mode_y(b), z_edge ? 0.5 : -0.5});
      g.edges.push_back({mode_y(a), mode_z(b), z_edge ? 0.5 : -0.5});
      g.edges.push_back({mode_y(a), mode_y(b), 0.5});
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

std::vector<int> fourier_shifted_indices(const PumpConfig& pumps, const CombSpec& comb) {
  pumps.validate();
  comb.validate();
  std::vector<int> shifted;

  if (pumps.p_z % 2 != 0) {
    // Odd pumps: every pair edge flips parity, so the two alternation
    // classes are the global parity classes.
    const int anchor_parity = ((ceil_half(pumps.p_z) % 2) + 2) % 2;
    for (int n = comb.n_min; n <= comb.n_max; ++n)
      if (((n % 2) + 2) % 2 == anchor_parity) shifted.push_back(n);
    return shifted;
  }

  // Even pumps: alternate along each chain, anchored at the member nearest
  // p_z / 2 (ties toward the larger index).
  for (const auto& chain : extract_wires(pumps, comb)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < chain.size(); ++i) {
      const int d_best = std::abs(2 * chain[best] - pumps.p_z);
      const int d_i = std::abs(2 * chain[i] - pumps.p_z);
      if (d_i < d_best || (d_i == d_best && chain[i] > chain[best])) best = i;
    }
    for (std::size_t i = best % 2; i < chain.size(); i += 2) shifted.push_back(chain[i]);
  }
  std::sort(shifted.begin(), shifted.end());
  return shifted;
}

}  // namespace combwire
