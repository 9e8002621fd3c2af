#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "combwire/config.hpp"
#include "combwire/entanglement.hpp"
#include "combwire/homodyne.hpp"
#include "combwire/imperfect.hpp"
#include "combwire/io.hpp"
#include "combwire/nullifier.hpp"

namespace cw = combwire;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::optional<double> r;
  std::optional<double> epsilon;
  std::optional<int> p_z;
  std::optional<int> p_y;
  std::optional<int> n_min;
  std::optional<int> n_max;
  double dark_db = -13.0;
  bool dark_db_set = false;
  bool dump_cov = false;

  // scan-specific
  std::optional<std::string> lo_center;
  std::optional<int> lo_offset;
  std::optional<int> sideband_n;
  std::optional<double> theta_o;
  int scan_points = 128;

  // bench-specific
  int bench_modes = 6700;
  std::string backend = "auto";
  bool force_dense = false;
};

cw::RunConfig merge_config(const CliOverrides& cli) {
  cw::RunConfig cfg;
  if (!cli.config_path.empty()) cfg = cw::load_config(cli.config_path);
  if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
  if (!cli.format.empty()) cfg.format = cli.format;
  if (cli.p_z) cfg.pumps.p_z = *cli.p_z;
  if (cli.p_y) cfg.pumps.p_y = *cli.p_y;
  if (cli.r) cfg.pumps.r_z = cfg.pumps.r_y = *cli.r;
  if (cli.epsilon) {
    cfg.imbalance.epsilon = *cli.epsilon;
    if (cli.r) cfg.imbalance.r = *cli.r;
  }
  if (cli.n_min) cfg.comb.n_min = *cli.n_min;
  if (cli.n_max) cfg.comb.n_max = *cli.n_max;
  if (cli.dark_db_set) cfg.bhd.dark_to_shot = std::pow(10.0, cli.dark_db / 10.0);

  if (cli.lo_center) {
    if (*cli.lo_center != "z" && *cli.lo_center != "y")
      throw cw::config_error("--lo-center must be z or y, got '" + *cli.lo_center + "'");
    cfg.bhd.lo_center_pump = *cli.lo_center == "z" ? cw::PumpCenter::Z : cw::PumpCenter::Y;
  }
  if (cli.lo_offset) cfg.bhd.lo_offset_index = *cli.lo_offset;
  if (cli.sideband_n) cfg.bhd.sideband_n = *cli.sideband_n;
  if (cli.theta_o) cfg.bhd.theta_o = *cli.theta_o;
  cfg.validate();
  return cfg;
}

void warn_degenerate_pumps(const cw::RunConfig& cfg) {
  for (int p : {cfg.pumps.p_z, cfg.pumps.p_y})
    if (cw::has_degenerate_pair(p, cfg.comb))
      std::cerr << "warning: pump index " << p << " has a degenerate self-paired mode at " << p / 2
                << "; it is excluded from the wires\n";
}

cw::BuildOptions build_options(const cw::RunConfig& cfg) {
  cw::BuildOptions opts;
  opts.state.symplectic_tol = cfg.tolerances.symplectic;
  return opts;
}

std::filesystem::path prepare_out_dir(const cw::RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw cw::config_error("cannot create output directory " + dir.string());
  return dir;
}

void maybe_dump_covariance(const cw::GaussianState& state, const cw::RunConfig& cfg,
                           bool requested) {
  if (!requested) return;
  const auto dir = prepare_out_dir(cfg);
  cw::write_text_file(dir / "covariance.csv", cw::covariance_csv(state));
  cw::write_text_file(dir / "covariance_meta.json", cw::covariance_meta(state).dump(2) + "\n");
}

void check_state_invariants(const cw::GaussianState& state, const cw::Tolerances& tol) {
  if (state.mode_count() > 512) return;  // materialization guard for huge states
  const Eigen::MatrixXd cov = state.dense_covariance();
  const double defect = cw::symmetry_defect(cov);
  if (defect > tol.symmetry)
    throw cw::invariant_error("covariance symmetry defect " + cw::format_sig(defect) +
                              " exceeds tolerance " + cw::format_sig(tol.symmetry));
  for (double nu : cw::symplectic_eigenvalues(cov))
    if (std::abs(nu - state.vac_var()) > tol.purity)
      throw cw::invariant_error("symplectic eigenvalue " + cw::format_sig(nu) +
                                " departs from purity beyond " + cw::format_sig(tol.purity));
}

int cmd_wires(const cw::RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const auto json = cw::wires_json(cfg.pumps, cfg.comb);
  cw::write_text_file(dir / "wires.json", json.dump(2) + "\n");
  const auto chains = cw::extract_wires(cfg.pumps, cfg.comb);
  std::cout << chains.size() << " wire(s) -> " << (dir / "wires.json").string() << "\n";
  return kExitOk;
}

int cmd_nullifiers(const cw::RunConfig& cfg, bool dump_cov) {
  const auto dir = prepare_out_dir(cfg);
  const auto state = cw::build_comb_state(cfg.pumps, cfg.comb, build_options(cfg));
  check_state_invariants(state, cfg.tolerances);
  maybe_dump_covariance(state, cfg, dump_cov);
  cw::BuildOptions shifted_opts = build_options(cfg);
  shifted_opts.fourier_shift = true;
  const auto shifted = cw::build_comb_state(cfg.pumps, cfg.comb, shifted_opts);

  auto rows = cw::bs_nullifier_table(state, cfg.pumps, cfg.comb);
  const auto graph_rows = cw::graph_nullifier_table(shifted, cfg.pumps, cfg.comb);
  rows.insert(rows.end(), graph_rows.begin(), graph_rows.end());

  if (cfg.format == "csv") {
    cw::write_text_file(dir / "nullifiers.csv", cw::nullifier_csv(rows));
    std::cout << rows.size() << " nullifier row(s) -> " << (dir / "nullifiers.csv").string()
              << "\n";
  } else {
    cw::write_text_file(dir / "nullifiers.json", cw::nullifier_json(rows).dump(2) + "\n");
    std::cout << rows.size() << " nullifier row(s) -> " << (dir / "nullifiers.json").string()
              << "\n";
  }
  return kExitOk;
}

int cmd_scan(const cw::RunConfig& cfg, int points, bool dump_cov) {
  const auto dir = prepare_out_dir(cfg);
  const auto state = cw::build_comb_state(cfg.pumps, cfg.comb, build_options(cfg));
  check_state_invariants(state, cfg.tolerances);
  maybe_dump_covariance(state, cfg, dump_cov);
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double two_pi = 2.0 * std::acos(-1.0);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = two_pi * i / points;
  const auto trace = cw::phase_scan(state, cfg.bhd, cfg.pumps, cfg.comb, grid);
  cw::write_text_file(dir / "scan.csv", cw::scan_csv(trace));
  std::cout << "scan of " << trace.descriptor << " -> " << (dir / "scan.csv").string() << "\n";
  return kExitOk;
}

int cmd_vlf(const cw::RunConfig& cfg, bool dump_cov) {
  const auto dir = prepare_out_dir(cfg);
  const auto state = cw::build_comb_state(cfg.pumps, cfg.comb, build_options(cfg));
  check_state_invariants(state, cfg.tolerances);
  maybe_dump_covariance(state, cfg, dump_cov);
  std::vector<cw::VlfReport> reports;
  for (const auto& wire : cw::extract_wires(cfg.pumps, cfg.comb))
    reports.push_back(cw::full_wire_inseparability(state, cfg.pumps, cfg.comb, wire));
  cw::write_text_file(dir / "vlf.json", cw::vlf_json(reports).dump(2) + "\n");
  int inseparable = 0;
  for (const auto& r : reports) inseparable += r.wire_inseparable ? 1 : 0;
  std::cout << inseparable << "/" << reports.size() << " wire(s) inseparable -> "
            << (dir / "vlf.json").string() << "\n";
  return kExitOk;
}

int cmd_imperfect(const cw::RunConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  std::vector<cw::ImbalanceReport> reports;
  // A small geometric sweep around the configured epsilon exposes the
  // quadratic residual scaling next to the configured point.
  const double eps0 = cfg.imbalance.epsilon;
  for (double factor : {0.5, 1.0, 2.0}) {
    cw::ImbalanceSpec spec{cfg.imbalance.r, eps0 * factor};
    spec.validate();
    reports.push_back(cw::imbalance_report(spec, cfg.comb));
  }
  cw::write_text_file(dir / "imperfect.json", cw::imbalance_json(reports).dump(2) + "\n");
  std::cout << reports.size() << " imbalance report(s) -> " << (dir / "imperfect.json").string()
            << "\n";
  return kExitOk;
}

int cmd_bench(const cw::RunConfig& base, const CliOverrides& cli) {
  cw::RunConfig cfg = base;
  const int freqs = cli.bench_modes / 2;
  cfg.comb.n_min = -freqs / 2;
  cfg.comb.n_max = freqs - freqs / 2 - 1;
  if (cli.n_min) cfg.comb.n_min = *cli.n_min;
  if (cli.n_max) cfg.comb.n_max = *cli.n_max;

  cw::BuildOptions opts = build_options(cfg);
  if (cli.backend == "dense")
    opts.state.backend = cw::CovBackend::Dense;
  else if (cli.backend == "block")
    opts.state.backend = cw::CovBackend::Block;
  else if (cli.backend != "auto")
    throw cw::config_error("unknown backend '" + cli.backend + "' (auto|dense|block)");
  opts.state.allow_large_dense = cli.force_dense;

  const auto t0 = std::chrono::steady_clock::now();
  const auto state = cw::build_comb_state(cfg.pumps, cfg.comb, opts);
  const auto t1 = std::chrono::steady_clock::now();
  const auto rows = cw::bs_nullifier_table(state, cfg.pumps, cfg.comb);
  const auto t2 = std::chrono::steady_clock::now();

  const double build_s = std::chrono::duration<double>(t1 - t0).count();
  const double eval_s = std::chrono::duration<double>(t2 - t1).count();
  const std::size_t mem = state.storage_bytes();
  const std::size_t dense_mem =
      4 * state.mode_count() * state.mode_count() * sizeof(double);

  std::cout << "modes: " << state.mode_count() << "\n"
            << "backend: " << (state.is_dense() ? "dense" : "block") << "\n"
            << "build_seconds: " << cw::format_sig(build_s) << "\n"
            << "nullifier_rows: " << rows.size() << "\n"
            << "eval_seconds: " << cw::format_sig(eval_s) << "\n"
            << "storage_bytes: " << mem << "\n"
            << "dense_equivalent_bytes: " << dense_mem << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-rail cluster-state simulator for a bimodally pumped OPO frequency comb"};
  app.require_subcommand(1);

  CliOverrides cli;
  app.add_option("--config", cli.config_path, "Config file (flat INI sections)");
  app.add_option("--out", cli.out_dir, "Output directory");
  app.add_option("--format", cli.format, "Output format: csv|json");
  double r_flag = 0, eps_flag = 0;
  auto* r_opt = app.add_option("--r", r_flag, "Squeezing parameter for both pumps");
  auto* eps_opt = app.add_option("--epsilon", eps_flag, "Pump imbalance half-difference");
  int pz_flag = 0, py_flag = 0, nmin_flag = 0, nmax_flag = 0;
  auto* pz_opt = app.add_option("--pz", pz_flag, "z pump index");
  auto* py_opt = app.add_option("--py", py_flag, "y pump index");
  auto* nmin_opt = app.add_option("--nmin", nmin_flag, "lowest comb index");
  auto* nmax_opt = app.add_option("--nmax", nmax_flag, "highest comb index");
  auto* dark_opt = app.add_option("--dark-db", cli.dark_db, "Dark-to-shot noise ratio in dB")
                       ->capture_default_str();
  app.add_flag("--dump-cov", cli.dump_cov, "Also write covariance.csv and covariance_meta.json");

  auto* wires = app.add_subcommand("wires", "Export wire sequences and cluster graphs");
  auto* nullifiers = app.add_subcommand("nullifiers", "Evaluate every interior nullifier");
  auto* scan = app.add_subcommand("scan", "LO phase scan of the homodyne signal");
  wires->fallthrough();
  nullifiers->fallthrough();
  scan->fallthrough();
  scan->add_option("--lo-center", cli.lo_center, "LO center pump: z|y");
  scan->add_option("--lo-offset", cli.lo_offset, "LO offset in FSR units");
  scan->add_option("--sideband-n", cli.sideband_n, "EOM sideband index n");
  scan->add_option("--theta-o", cli.theta_o, "EOM drive phase (rad)");
  scan->add_option("--points", cli.scan_points, "Scan grid size")->capture_default_str();
  auto* vlf = app.add_subcommand("vlf", "Bipartition bounds and wire inseparability");
  auto* imperfect = app.add_subcommand("imperfect", "Pump-imbalance report");
  auto* bench = app.add_subcommand("bench", "Large-state build and evaluation timing");
  vlf->fallthrough();
  imperfect->fallthrough();
  bench->fallthrough();
  bench->add_option("--modes", cli.bench_modes, "Total mode count")->capture_default_str();
  bench->add_option("--backend", cli.backend, "auto|dense|block")->capture_default_str();
  bench->add_flag("--force-dense", cli.force_dense, "Allow dense storage above the threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (r_opt->count()) cli.r = r_flag;
    if (eps_opt->count()) cli.epsilon = eps_flag;
    if (pz_opt->count()) cli.p_z = pz_flag;
    if (py_opt->count()) cli.p_y = py_flag;
    if (nmin_opt->count()) cli.n_min = nmin_flag;
    if (nmax_opt->count()) cli.n_max = nmax_flag;
    cli.dark_db_set = dark_opt->count() > 0;

    const cw::RunConfig cfg = merge_config(cli);
    warn_degenerate_pumps(cfg);
    if (wires->parsed()) return cmd_wires(cfg);
    if (nullifiers->parsed()) return cmd_nullifiers(cfg, cli.dump_cov);
    if (scan->parsed()) return cmd_scan(cfg, cli.scan_points, cli.dump_cov);
    if (vlf->parsed()) return cmd_vlf(cfg, cli.dump_cov);
    if (imperfect->parsed()) return cmd_imperfect(cfg);
    if (bench->parsed()) return cmd_bench(cfg, cli);
    std::cerr << "error[config]: no subcommand selected\n";
    return kExitConfig;
  } catch (const cw::config_error& e) {
    std::cerr << "error[config]: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cw::invariant_error& e) {
    std::cerr << "error[invariant]: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return kExitInvariant;
  }
}
