#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "combwire/entanglement.hpp"
#include "combwire/homodyne.hpp"
#include "combwire/imperfect.hpp"

namespace combwire {

/// Formats with 9 significant digits (below every stated tolerance).
std::string format_sig(double v, int digits = 9);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

std::string nullifier_csv(const std::vector<NullifierRow>& rows);
nlohmann::json nullifier_json(const std::vector<NullifierRow>& rows);

std::string scan_csv(const ScanTrace& trace);

nlohmann::json wires_json(const PumpConfig& pumps, const CombSpec& comb);
nlohmann::json vlf_json(const std::vector<VlfReport>& reports);
nlohmann::json imbalance_json(const std::vector<ImbalanceReport>& reports);

/// Full symmetric covariance, row-major CSV, plus a small JSON metadata
/// object {M, modes, vac_var}.
std::string covariance_csv(const GaussianState& state);
nlohmann::json covariance_meta(const GaussianState& state);

}  // namespace combwire
