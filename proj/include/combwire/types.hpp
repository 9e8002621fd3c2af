#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace combwire {

/// Raised when a configuration file or CLI flag set is unusable.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an operation would violate a documented contract
/// (unknown mode, out-of-range pair, unphysical parameter, ...).
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Polarization of a comb mode before the 45-degree beam splitter.
/// The same labels name the two rails of the quantum wire afterwards.
enum class Pol : std::uint8_t { Z, Y };

inline char pol_char(Pol p) { return p == Pol::Z ? 'z' : 'y'; }
Pol pol_from_char(char c);

/// One mode of the optical frequency comb, omega_n = omega0 + n * delta_omega.
struct ModeLabel {
  int n = 0;
  Pol pol = Pol::Z;

  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

inline ModeLabel mode_z(int n) { return {n, Pol::Z}; }
inline ModeLabel mode_y(int n) { return {n, Pol::Y}; }

std::string to_string(const ModeLabel& m);

/// Simulated slice of the comb: free spectral range, frequency origin and
/// the index window [n_min, n_max].
struct CombSpec {
  double delta_omega = 945.66e6;  ///< FSR in Hz
  double omega0 = 0.0;            ///< arbitrary origin in Hz
  int n_min = -16;
  int n_max = 16;

  void validate() const;
  bool contains(int n) const { return n >= n_min && n <= n_max; }
  int index_count() const { return n_max - n_min + 1; }
};

/// The two pump tones of the bimodally pumped OPO and their squeezing
/// parameters. The pump spacing fixes the wire count, m = |p_y - p_z| / 2.
struct PumpConfig {
  int p_z = 1;
  int p_y = -1;
  double r_z = 0.0;
  double r_y = 0.0;

  void validate() const;
  int wire_count() const;
};

/// Integer ceiling of p/2; the smallest index of a pump-p signal pair.
constexpr int ceil_half(int p) { return (p % 2 != 0) ? (p + 1) / 2 : p / 2; }

/// Numeric tolerances shared by the state checks. Defaults are the
/// engine contracts; the CLI can override them from a config file.
struct Tolerances {
  double symmetry = 1e-12;
  double symplectic = 1e-12;
  double purity = 1e-9;
  double cross_wire_zero = 1e-12;
  double backend_equality = 1e-12;
};

}  // namespace combwire
