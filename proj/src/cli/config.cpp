#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pmc/cli.hpp"
#include "pmc/error.hpp"
#include "pmc/numfmt.hpp"

namespace pmc::cli {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

[[noreturn]] void config_error(const std::string& key, const std::string& msg) {
  throw Error(ErrorKind::Config, "config key '" + key + "': " + msg);
}

double number(const KeyValues& kv, const std::string& key) {
  double v = 0.0;
  const auto& text = kv.at(key);
  if (!parse_double(text, v) || !std::isfinite(v)) config_error(key, "not a number: '" + text + "'");
  return v;
}

std::optional<double> optional_number(const KeyValues& kv, const std::string& key) {
  if (!kv.count(key)) return std::nullopt;
  return number(kv, key);
}

double required_number(const KeyValues& kv, const std::string& key, const std::string& why) {
  if (!kv.count(key)) config_error(key, "required " + why);
  return number(kv, key);
}

Profile read_table_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("table", "cannot open '" + path + "'");
  std::vector<double> r, f;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const bool first = header_allowed;
    header_allowed = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) config_error("table", "line " + std::to_string(lineno) + " needs 'r,f'");
    double rv = 0.0, fv = 0.0;
    if (!parse_double(line.substr(0, comma), rv) || !parse_double(line.substr(comma + 1), fv)) {
      if (first) continue;  // header
      config_error("table", "line " + std::to_string(lineno) + " is not numeric");
    }
    r.push_back(rv);
    f.push_back(fv);
  }
  try {
    return Profile::custom_radial(std::move(r), std::move(f));
  } catch (const Error& e) {
    config_error("table", e.what());
  }
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "profile", "k",   "a",   "b",      "B",          "c3",         "table",       "c",
      "u0",      "gamma", "bracket", "n", "tol",      "method",     "out",         "svg",
      "strict",  "sweep_param", "sweep_from", "sweep_to", "sweep_steps",
  };
  return keys;
}

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Config, "config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end())
      config_error(key, "unknown key");
    kv[key] = value;
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "config key 'config': cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

double parse_angle(const std::string& key, const std::string& text) {
  std::string t = trim(text);
  bool degrees = false;
  if (t.size() > 3 && t.compare(t.size() - 3, 3, "deg") == 0) {
    degrees = true;
    t = trim(t.substr(0, t.size() - 3));
  }
  double v = 0.0;
  if (!parse_double(t, v) || !std::isfinite(v)) config_error(key, "not an angle: '" + text + "'");
  return degrees ? v * std::numbers::pi / 180.0 : v;
}

RunConfig build_run_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv)
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end())
      config_error(key, "unknown key");

  RunConfig cfg;
  if (!kv.count("profile")) config_error("profile", "required");
  const auto kind = parse_profile_kind(kv.at("profile"));
  if (!kind) config_error("profile", "unknown profile '" + kv.at("profile") + "' (see 'presets')");

  try {
    switch (*kind) {
      case ProfileKind::Constant:
        cfg.profile = Profile::constant(required_number(kv, "k", "for constant"));
        break;
      case ProfileKind::Linear:
        cfg.profile = Profile::linear(required_number(kv, "a", "for linear"),
                                      required_number(kv, "b", "for linear"));
        break;
      case ProfileKind::Quadratic:
        cfg.profile = Profile::quadratic(required_number(kv, "a", "for quadratic"),
                                         required_number(kv, "b", "for quadratic"));
        break;
      case ProfileKind::Exponential:
        cfg.profile = Profile::exponential(required_number(kv, "a", "for exponential"));
        break;
      case ProfileKind::Sine: cfg.profile = Profile::sine(); break;
      case ProfileKind::Capillary:
        cfg.profile = Profile::capillary(required_number(kv, "B", "for capillary"));
        break;
      case ProfileKind::Compressible:
        cfg.profile = Profile::compressible(required_number(kv, "a", "for compressible"),
                                            required_number(kv, "b", "for compressible"),
                                            optional_number(kv, "c3").value_or(0.0));
        break;
      case ProfileKind::CustomRadial:
        if (!kv.count("table")) config_error("table", "required for custom");
        cfg.profile = read_table_profile(kv.at("table"));
        break;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_error("profile", e.what());
  }

  cfg.c = required_number(kv, "c", "(domain endpoint)");
  if (!(cfg.c > 0.0)) config_error("c", "must be positive");

  cfg.u0 = optional_number(kv, "u0");
  if (kv.count("gamma")) cfg.gamma = parse_angle("gamma", kv.at("gamma"));

  if (cfg.profile.radial_only()) {
    if (cfg.gamma) config_error("gamma", "the contact angle is determined by f for radial profiles; give u0");
    if (!cfg.u0) config_error("u0", "required for radial profiles");
  } else {
    if (cfg.u0 && cfg.gamma) config_error("gamma", "give exactly one of u0 and gamma");
    if (!cfg.u0 && !cfg.gamma) config_error("u0", "give exactly one of u0 and gamma");
  }
  if (cfg.gamma) {
    if (!(*cfg.gamma >= 0.0 && *cfg.gamma < std::numbers::pi / 2.0))
      config_error("gamma", "must lie in [0, pi/2)");
    if (!kv.count("bracket")) config_error("bracket", "required with gamma (low,high)");
    const std::string& text = kv.at("bracket");
    const auto comma = text.find(',');
    double lo = 0.0, hi = 0.0;
    if (comma == std::string::npos || !parse_double(text.substr(0, comma), lo) ||
        !parse_double(text.substr(comma + 1), hi))
      config_error("bracket", "expected 'low,high'");
    if (!(lo < hi)) config_error("bracket", "low must be below high");
    cfg.bracket = {lo, hi};
  }

  if (kv.count("n")) {
    const double n = number(kv, "n");
    if (!(n >= 16.0) || n != std::floor(n) || n > 1e8) config_error("n", "must be an integer >= 16");
    cfg.intervals = static_cast<std::size_t>(n);
    cfg.intervals += cfg.intervals % 2;
  }
  if (kv.count("tol")) {
    cfg.tol = number(kv, "tol");
    if (!(cfg.tol >= 1e-12 && cfg.tol <= 1e-4)) config_error("tol", "must lie in [1e-12, 1e-4]");
  }
  if (kv.count("method")) {
    const std::string& m = kv.at("method");
    if (m == "auto") cfg.method = MethodChoice::Auto;
    else if (m == "quadrature") cfg.method = MethodChoice::Quadrature;
    else if (m == "ivp") cfg.method = MethodChoice::Ivp;
    else config_error("method", "expected auto, quadrature or ivp");
    if (cfg.method == MethodChoice::Quadrature && !cfg.profile.radial_only())
      config_error("method", "quadrature needs a radial-only profile");
  }
  if (kv.count("out")) cfg.out = kv.at("out");
  if (kv.count("svg")) cfg.svg = kv.at("svg");
  if (kv.count("strict")) {
    const std::string& s = kv.at("strict");
    if (s == "true" || s == "1" || s == "yes") cfg.strict = true;
    else if (s == "false" || s == "0" || s == "no") cfg.strict = false;
    else config_error("strict", "expected true or false");
  }

  const bool any_sweep = kv.count("sweep_param") || kv.count("sweep_from") || kv.count("sweep_to") ||
                         kv.count("sweep_steps");
  if (any_sweep) {
    SweepSpec sw;
    if (!kv.count("sweep_param")) config_error("sweep_param", "required for a sweep");
    sw.parameter = kv.at("sweep_param");
    sw.from = required_number(kv, "sweep_from", "for a sweep");
    sw.to = required_number(kv, "sweep_to", "for a sweep");
    const double steps = required_number(kv, "sweep_steps", "for a sweep");
    if (!(steps >= 2.0) || steps != std::floor(steps) || steps > 1e6)
      config_error("sweep_steps", "must be an integer >= 2");
    sw.steps = static_cast<int>(steps);
    if (!(sw.from < sw.to)) config_error("sweep_to", "sweep range must satisfy from < to");
    if (sw.parameter == "u0") {
      if (cfg.gamma) config_error("sweep_param", "cannot sweep u0 while shooting for gamma");
    } else {
      try {
        (void)cfg.profile.with_parameter(sw.parameter, sw.from);
      } catch (const Error&) {
        config_error("sweep_param", "'" + sw.parameter + "' is not a parameter of " +
                                        std::string(to_string(cfg.profile.kind())) + " or u0");
      }
    }
    cfg.sweep = sw;
  }
  return cfg;
}

}  // namespace pmc::cli
