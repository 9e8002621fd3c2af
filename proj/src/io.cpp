#include "combwire/io.hpp"

#include <cstdio>
#include <fstream>

namespace combwire {

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw config_error("cannot open output file " + path.string());
  out << contents;
  if (!out) throw config_error("failed writing " + path.string());
}

std::string nullifier_csv(const std::vector<NullifierRow>& rows) {
  std::string s = "kind,pump_center,n,theta,variance,shot_noise,dB\n";
  for (const auto& r : rows) {
    s += r.kind;
    s += ',';
    s += r.pump_center;
    s += ',' + std::to_string(r.n) + ',' + format_sig(r.theta) + ',' + format_sig(r.variance) +
         ',' + format_sig(r.shot_noise) + ',' + format_sig(r.db) + '\n';
  }
  return s;
}

nlohmann::json nullifier_json(const std::vector<NullifierRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"kind", r.kind},
                   {"pump_center", std::string(1, r.pump_center)},
                   {"n", r.n},
                   {"theta", r.theta},
                   {"variance", r.variance},
                   {"shot_noise", r.shot_noise},
                   {"dB", r.db}});
  return nlohmann::json{{"nullifiers", arr}};
}

std::string scan_csv(const ScanTrace& trace) {
  std::string s = "theta_lo_rad,variance_db_raw,variance_db_corrected\n";
  for (const auto& p : trace.points)
    s += format_sig(p.theta_lo) + ',' + format_sig(p.raw_db) + ',' + format_sig(p.corrected_db) +
         '\n';
  return s;
}

nlohmann::json wires_json(const PumpConfig& pumps, const CombSpec& comb) {
  nlohmann::json wires = nlohmann::json::array();
  for (const auto& g : wire_graphs(pumps, comb)) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
      edges.push_back({e.a.n, std::string(1, pol_char(e.a.pol)), e.b.n,
                       std::string(1, pol_char(e.b.pol)), e.weight > 0 ? "1/2" : "-1/2"});
    wires.push_back({{"sequence", g.sequence}, {"edges", edges}});
  }
  return nlohmann::json{{"wires", wires}};
}

nlohmann::json vlf_json(const std::vector<VlfReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : rep.cells) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : cell.checks)
        checks.push_back({{"bipartition", c.bipartition},
                          {"observables", c.observables},
                          {"sum", c.sum},
                          {"bound", c.bound},
                          {"violated", c.violated}});
      cells.push_back({{"center", cell.cell.center == PumpCenter::Z ? "z" : "y"},
                       {"n3", cell.cell.n3},
                       {"n4", cell.cell.n4},
                       {"evaluable", cell.evaluable},
                       {"interior", cell.interior},
                       {"used_alternative", cell.used_alternative},
                       {"companion", cell.companion},
                       {"checks", checks},
                       {"inseparable", cell.inseparable}});
    }
    out.push_back({{"cells", cells},
                   {"evaluable_cells", rep.evaluable_cells},
                   {"interior_cells", rep.interior_cells},
                   {"violated_cells", rep.violated_cells},
                   {"wire_inseparable", rep.wire_inseparable},
                   {"notes", rep.notes}});
  }
  return nlohmann::json{{"wires", out}};
}

nlohmann::json imbalance_json(const std::vector<ImbalanceReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports)
    arr.push_back({{"epsilon", r.epsilon},
                   {"first_order_variance", r.first_order_variance},
                   {"exact_variance", r.exact_variance},
                   {"residual", r.residual},
                   {"zy_correlation", r.zy_correlation}});
  return nlohmann::json{{"r", reports.empty() ? 0.0 : reports.front().r}, {"reports", arr}};
}

std::string covariance_csv(const GaussianState& state) {
  const Eigen::MatrixXd cov = state.dense_covariance();
  std::string s;
  s.reserve(static_cast<std::size_t>(cov.size()) * 12);
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    for (Eigen::Index j = 0; j < cov.cols(); ++j) {
      if (j) s += ',';
      s += format_sig(cov(i, j));
    }
    s += '\n';
  }
  return s;
}

nlohmann::json covariance_meta(const GaussianState& state) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& m : state.modes()) labels.push_back(to_string(m));
  return nlohmann::json{
      {"M", state.mode_count()}, {"modes", labels}, {"vac_var", state.vac_var()}};
}

}  // namespace combwire
