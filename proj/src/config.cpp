#include "gns/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gns/errors.hpp"

namespace gns {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

double number(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size() || !std::isfinite(v)) throw std::invalid_argument(e.value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid number '" + e.value + "'", e.line);
  }
}

long long integer(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument(e.value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid integer '" + e.value + "'", e.line);
  }
}

bool on_off(const Entry& e, const std::string& key) {
  if (e.value == "on") return true;
  if (e.value == "off") return false;
  throw ConfigError(key + ": expected on|off, got '" + e.value + "'", e.line);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  static const char* const known[] = {"id",     "nu",   "T",    "dt",        "cutoff", "ic",
                                      "forcing", "stride", "seed", "nonlinear", "states"};
  std::map<std::string, Entry> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + text + "'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError("unknown key '" + key + "'", line);
    }
    if (value.empty()) throw ConfigError(key + ": empty value", line);
    if (!entries.emplace(key, Entry{value, line}).second) throw ConfigError("duplicate key '" + key + "'", line);
  }
  for (const char* required : {"nu", "T", "dt", "cutoff", "ic"}) {
    if (!entries.count(required)) throw ConfigError(std::string("missing required key '") + required + "'");
  }

  ScenarioConfig c;
  if (entries.count("id")) c.id = entries["id"].value;

  c.nu = number(entries["nu"], "nu");
  if (!(c.nu > 0.0)) throw ConfigError("nu must be > 0", entries["nu"].line);
  c.horizon = number(entries["T"], "T");
  if (!(c.horizon > 0.0)) throw ConfigError("T must be > 0", entries["T"].line);
  c.dt = number(entries["dt"], "dt");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be > 0", entries["dt"].line);
  if (c.dt > c.horizon) throw ConfigError("dt must not exceed T", entries["dt"].line);
  c.cutoff = static_cast<int>(integer(entries["cutoff"], "cutoff"));
  if (c.cutoff < 1) throw ConfigError("cutoff must be >= 1", entries["cutoff"].line);
  if (entries.count("stride")) {
    c.stride = static_cast<int>(integer(entries["stride"], "stride"));
    if (c.stride < 1) throw ConfigError("stride must be >= 1", entries["stride"].line);
  }
  if (entries.count("seed")) {
    const long long s = integer(entries["seed"], "seed");
    if (s < 0) throw ConfigError("seed must be >= 0", entries["seed"].line);
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (entries.count("nonlinear")) c.nonlinear = on_off(entries["nonlinear"], "nonlinear");
  if (entries.count("states")) c.dump_states = on_off(entries["states"], "states");

  try {
    c.initial = parse_initial_condition(entries["ic"].value, c.seed);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("ic: ") + e.what(), entries["ic"].line);
  }
  if (entries.count("forcing")) {
    try {
      c.forcing = parse_forcing(entries["forcing"].value);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("forcing: ") + e.what(), entries["forcing"].line);
    }
  }
  return c;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string to_config_text(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "id=" << c.id << '\n'
      << "nu=" << fmt(c.nu) << '\n'
      << "T=" << fmt(c.horizon) << '\n'
      << "dt=" << fmt(c.dt) << '\n'
      << "cutoff=" << c.cutoff << '\n'
      << "ic=" << to_string(c.initial) << '\n'
      << "forcing=" << to_string(c.forcing) << '\n'
      << "stride=" << c.stride << '\n'
      << "seed=" << c.seed << '\n'
      << "nonlinear=" << (c.nonlinear ? "on" : "off") << '\n'
      << "states=" << (c.dump_states ? "on" : "off") << '\n';
  return out.str();
}

}  // namespace gns
