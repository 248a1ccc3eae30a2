#include "speclab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace speclab::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& v, int line) {
  const char* s = v.c_str();
  char* end = nullptr;
  double x = std::strtod(s, &end);
  if (end == s || *end != '\0') fail(line, "bad number '" + v + "'");
  return x;
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "empty list entry");
    out.push_back(parse_number(item, line));
  }
  if (out.empty()) fail(line, "empty list");
  return out;
}

}  // namespace

std::vector<ExperimentConfig> parse_config(const std::string& text) {
  std::vector<ExperimentConfig> cfgs;
  std::stringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) fail(line, "empty section name");
      ExperimentConfig c;
      c.section = name;
      c.id = name;
      cfgs.push_back(c);
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value");
    if (cfgs.empty()) fail(line, "key before any [section]");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (val.empty()) fail(line, "empty value for '" + key + "'");
    ExperimentConfig& c = cfgs.back();
    if (key == "id") c.id = val;
    else if (key == "model") c.model = val;
    else if (key == "ensemble") c.ensemble = val;
    else if (key == "cutoff") c.cutoff = parse_number(val, line);
    else if (key == "h") c.h_list = parse_list(val, line);
    else if (key == "p") c.p = parse_number(val, line);
    else if (key == "q") c.q = parse_number(val, line);
    else if (key == "alpha") c.alpha = parse_number(val, line);
    else if (key == "beta") c.beta = parse_number(val, line);
    else if (key == "c0") c.c0 = parse_number(val, line);
    else if (key == "ball_radius") c.ball_radius = parse_number(val, line);
    else if (key == "width") c.width = parse_number(val, line);
    else if (key == "center") c.center = parse_number(val, line);
    else if (key == "level") c.level = static_cast<int>(parse_number(val, line));
    else if (key == "mode_id") c.mode_id = static_cast<int>(parse_number(val, line));
    else if (key == "trials") c.trials = static_cast<int>(parse_number(val, line));
    else if (key == "resolution") c.resolution = static_cast<int>(parse_number(val, line));
    else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_number(val, line));
      c.seed_set = true;
    } else if (key == "t") c.t_list = parse_list(val, line);
    else if (key == "lam0") c.lam0_list = parse_list(val, line);
    else if (key == "alphas") c.alpha_list = parse_list(val, line);
    else fail(line, "unknown key '" + key + "'");
  }
  if (cfgs.empty()) throw config_error("config: no [section] found");
  return cfgs;
}

std::vector<ExperimentConfig> load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace speclab::config
