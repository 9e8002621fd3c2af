#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "combwire/config.hpp"
#include "combwire/io.hpp"

using namespace combwire;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(COMBWIRE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("combwire_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing round trip") {
  const std::string text =
      "# comment\n"
      "[comb]\n"
      "delta_omega = 945.66e6\n"
      "n_min = -8\n"
      "n_max = 8\n"
      "[pumps]\n"
      "p_z = 3\n"
      "p_y = -1\n"
      "r_z = 0.4\n"
      "r_y = 0.4\n"
      "[bhd]\n"
      "lo_center_pump = y\n"
      "sideband_n = 2\n"
      "dark_to_shot_db = -13\n"
      "[output]\n"
      "format = json\n";
  const auto cfg = parse_config(text);
  CHECK(cfg.comb.n_min == -8);
  CHECK(cfg.pumps.p_z == 3);
  CHECK(cfg.pumps.r_y == doctest::Approx(0.4));
  CHECK(cfg.bhd.sideband_n == 2);
  CHECK(cfg.bhd.dark_to_shot == doctest::Approx(std::pow(10.0, -1.3)));
  CHECK(cfg.format == "json");
  CHECK_NOTHROW(cfg.validate());

  const auto tol = parse_config("[tolerances]\nsymmetry = 1e-10\npurity = 1e-8\n");
  CHECK(tol.tolerances.symmetry == doctest::Approx(1e-10));
  CHECK(tol.tolerances.purity == doctest::Approx(1e-8));
}

TEST_CASE("config errors carry line anchors") {
  auto check_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_config(text, "test.cfg");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  check_error("[unknown]\n", "test.cfg:1");
  check_error("[comb]\nbogus = 1\n", "test.cfg:2");
  check_error("[comb]\nn_min fish\n", "expected key = value");
  check_error("n_min = 1\n", "outside any section");
  check_error("[comb]\nn_min = banana\n", "integer");

  RunConfig bad;
  bad.format = "xml";
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("identical configs give byte-identical outputs") {
  const CombSpec comb{945.66e6, 0.0, -8, 8};
  const PumpConfig pumps{1, -1, 0.4, 0.4};

  const auto json_a = wires_json(pumps, comb).dump(2);
  const auto json_b = wires_json(pumps, comb).dump(2);
  CHECK(json_a == json_b);

  const auto state_a = build_comb_state(pumps, comb);
  const auto state_b = build_comb_state(pumps, comb);
  CHECK(nullifier_csv(bs_nullifier_table(state_a, pumps, comb)) ==
        nullifier_csv(bs_nullifier_table(state_b, pumps, comb)));
  CHECK(covariance_csv(state_a) == covariance_csv(state_b));
}

TEST_CASE("wires json carries exact rational edge weights") {
  const CombSpec comb{945.66e6, 0.0, -6, 6};
  const PumpConfig pumps{1, -1, 0.4, 0.4};
  const auto json = wires_json(pumps, comb);
  REQUIRE(json.at("wires").size() == 1);
  const auto& wire = json.at("wires").at(0);
  CHECK(wire.at("sequence").at(0).get<int>() == -6);
  bool saw_plus = false, saw_minus = false;
  for (const auto& edge : wire.at("edges")) {
    const auto w = edge.at(4).get<std::string>();
    CHECK((w == "1/2" || w == "-1/2"));
    saw_plus |= w == "1/2";
    saw_minus |= w == "-1/2";
  }
  CHECK(saw_plus);
  CHECK(saw_minus);
}

TEST_CASE("cli exit codes and determinism") {
  const auto dir_a = temp_dir("a");
  const auto dir_b = temp_dir("b");

  SUBCASE("wires and nullifiers run clean and deterministically") {
    CHECK(run_cli("wires --pz 1 --py -1 --nmin -6 --nmax 6 --out " + dir_a.string()) == 0);
    CHECK(run_cli("wires --pz 1 --py -1 --nmin -6 --nmax 6 --out " + dir_b.string()) == 0);
    CHECK(slurp(dir_a / "wires.json") == slurp(dir_b / "wires.json"));

    CHECK(run_cli("nullifiers --r 0.4 --nmin -8 --nmax 8 --out " + dir_a.string()) == 0);
    CHECK(run_cli("nullifiers --r 0.4 --nmin -8 --nmax 8 --out " + dir_b.string()) == 0);
    CHECK(slurp(dir_a / "nullifiers.csv") == slurp(dir_b / "nullifiers.csv"));
  }

  SUBCASE("scan, vlf and imperfect produce their artifacts") {
    CHECK(run_cli("scan --r 0.4 --nmin -8 --nmax 8 --sideband-n 1 --points 16 --out " +
                  dir_a.string()) == 0);
    CHECK(std::filesystem::exists(dir_a / "scan.csv"));
    CHECK(run_cli("vlf --r 0.4 --nmin -8 --nmax 8 --out " + dir_a.string()) == 0);
    CHECK(std::filesystem::exists(dir_a / "vlf.json"));
    CHECK(run_cli("imperfect --r 0.4 --epsilon 0.01 --nmin -4 --nmax 4 --out " + dir_a.string()) ==
          0);
    CHECK(std::filesystem::exists(dir_a / "imperfect.json"));
  }

  SUBCASE("config file bhd settings survive a flagless scan") {
    const auto cfg_path = dir_a / "scan.cfg";
    std::ofstream(cfg_path) << "[pumps]\nr_z = 0.4\nr_y = 0.4\n"
                            << "[bhd]\nlo_offset_index = 1\nsideband_n = 2\n";
    CHECK(run_cli("scan --config " + cfg_path.string() + " --nmin -8 --nmax 8 --points 6 --out " +
                  dir_a.string()) == 0);
    // a wrong-frequency selection scans flat, unlike the matched default
    const auto body = slurp(dir_a / "scan.csv");
    std::set<std::string> levels;
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line))
      levels.insert(line.substr(line.rfind(',') + 1));
    CHECK(levels.size() == 1);
  }

  SUBCASE("json nullifier table and covariance dump") {
    CHECK(run_cli("nullifiers --r 0.4 --nmin -6 --nmax 6 --format json --dump-cov --out " +
                  dir_a.string()) == 0);
    CHECK(std::filesystem::exists(dir_a / "nullifiers.json"));
    CHECK(std::filesystem::exists(dir_a / "covariance.csv"));
    CHECK(std::filesystem::exists(dir_a / "covariance_meta.json"));
  }

  SUBCASE("bench runs on a small block state") {
    CHECK(run_cli("bench --modes 128 --backend block --r 0.2") == 0);
  }

  SUBCASE("config errors exit 2, invariant violations exit 3") {
    CHECK(run_cli("wires --config /nonexistent.cfg --out " + dir_a.string()) == 2);
    CHECK(run_cli("wires --pz 1 --py 2 --out " + dir_a.string()) == 3);   // odd spacing
    CHECK(run_cli("wires --pz 1 --py 1 --out " + dir_a.string()) == 3);   // zero spacing
    CHECK(run_cli("nullifiers --r -0.5 --out " + dir_a.string()) == 3);   // negative squeezing

    const auto cfg_path = dir_a / "bad.cfg";
    std::ofstream(cfg_path) << "[comb]\nn_min = not_a_number\n";
    CHECK(run_cli("wires --config " + cfg_path.string() + " --out " + dir_a.string()) == 2);
  }

  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}
