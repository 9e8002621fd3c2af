#include "combwire/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace combwire {

void RunConfig::validate() const {
  comb.validate();
  pumps.validate();
  bhd.validate(comb);
  if (format != "csv" && format != "json")
    throw config_error("output format must be csv or json, got '" + format + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& where) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw config_error(where + ": cannot parse '" + value + "' as a number");
  }
  if (pos != value.size()) throw config_error(where + ": trailing junk in '" + value + "'");
  return v;
}

int parse_int(const std::string& value, const std::string& where) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    throw config_error(where + ": cannot parse '" + value + "' as an integer");
  }
  if (pos != value.size()) throw config_error(where + ": trailing junk in '" + value + "'");
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;

  using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
  const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"comb",
       {{"delta_omega", [](RunConfig& c, const std::string& v, const std::string& w) { c.comb.delta_omega = parse_double(v, w); }},
        {"omega0", [](RunConfig& c, const std::string& v, const std::string& w) { c.comb.omega0 = parse_double(v, w); }},
        {"n_min", [](RunConfig& c, const std::string& v, const std::string& w) { c.comb.n_min = parse_int(v, w); }},
        {"n_max", [](RunConfig& c, const std::string& v, const std::string& w) { c.comb.n_max = parse_int(v, w); }}}},
      {"pumps",
       {{"p_z", [](RunConfig& c, const std::string& v, const std::string& w) { c.pumps.p_z = parse_int(v, w); }},
        {"p_y", [](RunConfig& c, const std::string& v, const std::string& w) { c.pumps.p_y = parse_int(v, w); }},
        {"r_z", [](RunConfig& c, const std::string& v, const std::string& w) { c.pumps.r_z = parse_double(v, w); }},
        {"r_y", [](RunConfig& c, const std::string& v, const std::string& w) { c.pumps.r_y = parse_double(v, w); }}}},
      {"bhd",
       {{"lo_center_pump",
         [](RunConfig& c, const std::string& v, const std::string& w) {
           if (v != "z" && v != "y") throw config_error(w + ": lo_center_pump must be z or y");
           c.bhd.lo_center_pump = v == "z" ? PumpCenter::Z : PumpCenter::Y;
         }},
        {"lo_offset_index", [](RunConfig& c, const std::string& v, const std::string& w) { c.bhd.lo_offset_index = parse_int(v, w); }},
        {"sideband_n", [](RunConfig& c, const std::string& v, const std::string& w) { c.bhd.sideband_n = parse_int(v, w); }},
        {"theta_lo", [](RunConfig& c, const std::string& v, const std::string& w) { c.bhd.theta_lo = parse_double(v, w); }},
        {"theta_o", [](RunConfig& c, const std::string& v, const std::string& w) { c.bhd.theta_o = parse_double(v, w); }},
        {"dark_to_shot_db",
         [](RunConfig& c, const std::string& v, const std::string& w) {
           c.bhd.dark_to_shot = std::pow(10.0, parse_double(v, w) / 10.0);
         }},
        {"modulator_bandwidth", [](RunConfig& c, const std::string& v, const std::string& w) { c.bhd.modulator_bandwidth = parse_double(v, w); }}}},
      {"imperfect",
       {{"r", [](RunConfig& c, const std::string& v, const std::string& w) { c.imbalance.r = parse_double(v, w); }},
        {"epsilon", [](RunConfig& c, const std::string& v, const std::string& w) { c.imbalance.epsilon = parse_double(v, w); }}}},
      {"output",
       {{"directory", [](RunConfig& c, const std::string& v, const std::string&) { c.out_dir = v; }},
        {"format", [](RunConfig& c, const std::string& v, const std::string&) { c.format = v; }}}},
      {"tolerances",
       {{"symmetry", [](RunConfig& c, const std::string& v, const std::string& w) { c.tolerances.symmetry = parse_double(v, w); }},
        {"symplectic", [](RunConfig& c, const std::string& v, const std::string& w) { c.tolerances.symplectic = parse_double(v, w); }},
        {"purity", [](RunConfig& c, const std::string& v, const std::string& w) { c.tolerances.purity = parse_double(v, w); }},
        {"cross_wire_zero", [](RunConfig& c, const std::string& v, const std::string& w) { c.tolerances.cross_wire_zero = parse_double(v, w); }},
        {"backend_equality", [](RunConfig& c, const std::string& v, const std::string& w) { c.tolerances.backend_equality = parse_double(v, w); }}}}};

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema.count(section)) throw config_error(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw config_error(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw config_error(where + ": key outside any section");
    const auto& keys = schema.at(section);
    const auto it = keys.find(key);
    if (it == keys.end())
      throw config_error(where + ": unknown key '" + key + "' in section [" + section + "]");
    it->second(cfg, value, where);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace combwire
