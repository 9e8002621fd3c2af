#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "combwire/homodyne.hpp"
#include "combwire/imperfect.hpp"
#include "combwire/types.hpp"

namespace combwire {

/// Everything a CLI run needs, mirroring the module sections of the
/// config file. Flags override file values; validate() re-checks all
/// module invariants after merging.
struct RunConfig {
  static BhdConfig default_bhd() {
    BhdConfig b;
    b.sideband_n = 1;                      // the innermost unit-cell pair
    b.dark_to_shot = 0.05011872336272722;  // -13 dB below shot noise
    return b;
  }

  CombSpec comb;
  PumpConfig pumps{1, -1, 0.0, 0.0};
  BhdConfig bhd = default_bhd();
  ImbalanceSpec imbalance{0.4, 0.01};
  std::string out_dir = "out";
  std::string format = "csv";  // csv | json
  Tolerances tolerances;

  void validate() const;
};

/// Parses the flat INI-style config (sections [comb], [pumps], [bhd],
/// [imperfect], [output], [tolerances]); errors carry the line number.
RunConfig load_config(const std::filesystem::path& path);

/// Parses the body of a config already in memory (used by tests).
RunConfig parse_config(const std::string& text, const std::string& origin = "<memory>");

}  // namespace combwire
