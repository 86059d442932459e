#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isoparam/error.hpp"
#include "isoparam/exact/rational.hpp"

namespace isoparam::verify {

using exact::BigRational;

inline const std::vector<std::string> & suite_names()
{
  static const std::vector<std::string> names{"recurrence", "kac", "system", "jacobi", "geometry", "all"};
  return names;
}

struct SuiteConfig
{
  std::string suite = "all";
  std::vector<int> n{2, 3, 4};
  std::vector<int> m{1, 2};
  std::vector<int> c{-1, 1};
  std::vector<BigRational> tau{BigRational(1, 2)};
  std::vector<double> kappa{0.5, 1.0, 2.0};
  std::vector<double> a{0.5, 1.0, 2.0};
  std::optional<int> kmax;  // empty means auto: (m+1)n+2 per point
  std::uint64_t seed = 1;
  int trials = 20;
  std::string family = "all";  // s1 | hn | all
  std::string out;
  unsigned threads = 0;  // 0: hardware concurrency

  int kmax_for(int nn, int mm) const { return kmax ? *kmax : (mm + 1) * nn + 2; }

  void validate() const
  {
    bool known = false;
    for (const auto & s : suite_names()) { known = known || s == suite; }
    if (!known) { throw ConfigError("unknown suite '" + suite + "'", "suite"); }
    if (n.empty() || m.empty() || c.empty() || tau.empty()) { throw ConfigError("parameter lists must be non-empty", n.empty() ? "n" : m.empty() ? "m" : c.empty() ? "c" : "tau"); }
    for (int v : n) {
      if (v < 1) { throw ConfigError("n must be positive", "n"); }
    }
    for (int v : m) {
      if (v < 1) { throw ConfigError("m must be positive", "m"); }
    }
    for (int v : c) {
      if (v != -1 && v != 1) { throw ConfigError("c must be -1 or 1, got " + std::to_string(v), "c"); }
    }
    for (const auto & t : tau) {
      if (!(t > BigRational(0) && t < BigRational(1))) { throw ConfigError("tau must lie in (0,1), got " + t.to_string(), "tau"); }
    }
    for (double v : a) {
      if (!(v >= 0)) { throw ConfigError("a must be non-negative", "a"); }
    }
    if (kmax && *kmax < 1) { throw ConfigError("kmax must be at least 1", "kmax"); }
    if (trials < 1) { throw ConfigError("trials must be at least 1", "trials"); }
    if (family != "s1" && family != "hn" && family != "all") { throw ConfigError("family must be s1, hn or all", "family"); }
  }
};

namespace detail {

inline std::string trim(const std::string & s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) { return {}; }
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> split_list(const std::string & s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) { out.push_back(trim(item)); }
  return out;
}

inline long long parse_integer(const std::string & s, const std::string & key, int line)
{
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) { throw std::invalid_argument(s); }
    return v;
  } catch (const std::exception &) {
    throw ConfigError("malformed integer '" + s + "' for " + key, key, line);
  }
}

inline double parse_real(const std::string & s, const std::string & key, int line)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) { throw std::invalid_argument(s); }
    return v;
  } catch (const std::exception &) {
    throw ConfigError("malformed number '" + s + "' for " + key, key, line);
  }
}

template<class F>
auto parse_each(const std::string & value, const std::string & key, int line, F && f)
{
  std::vector<decltype(f(std::string{}))> out;
  for (const auto & item : split_list(value)) {
    if (item.empty()) { throw ConfigError("empty list entry for " + key, key, line); }
    out.push_back(f(item));
  }
  return out;
}

inline std::vector<int> parse_ints(const std::string & value, const std::string & key, int line)
{
  return parse_each(value, key, line, [&](const std::string & s) { return static_cast<int>(parse_integer(s, key, line)); });
}

}  // namespace detail

/// Applies one key=value setting; line is reported in errors (0 for command-line flags).
inline void apply_setting(SuiteConfig & cfg, const std::string & key, const std::string & raw, int line = 0)
{
  using namespace detail;
  const std::string value = trim(raw);
  if (key == "suite") {
    cfg.suite = value;
    bool known = false;
    for (const auto & s : suite_names()) { known = known || s == value; }
    if (!known) { throw ConfigError("unknown suite '" + value + "'", key, line); }
  } else if (key == "n") {
    cfg.n = parse_ints(value, key, line);
  } else if (key == "m") {
    cfg.m = parse_ints(value, key, line);
  } else if (key == "c") {
    cfg.c = parse_ints(value, key, line);
    for (int v : cfg.c) {
      if (v != -1 && v != 1) { throw ConfigError("c must be -1 or 1, got " + std::to_string(v), key, line); }
    }
  } else if (key == "tau") {
    cfg.tau = parse_each(value, key, line, [&](const std::string & s) {
      try {
        return BigRational::parse(s);
      } catch (const Error &) {
        throw ConfigError("malformed rational '" + s + "' for tau", key, line);
      }
    });
    for (const auto & t : cfg.tau) {
      if (!(t > BigRational(0) && t < BigRational(1))) { throw ConfigError("tau must lie in (0,1), got " + t.to_string(), key, line); }
    }
  } else if (key == "kappa") {
    cfg.kappa = parse_each(value, key, line, [&](const std::string & s) { return parse_real(s, key, line); });
  } else if (key == "a") {
    cfg.a = parse_each(value, key, line, [&](const std::string & s) { return parse_real(s, key, line); });
  } else if (key == "kmax") {
    if (value == "auto") {
      cfg.kmax.reset();
    } else {
      cfg.kmax = static_cast<int>(parse_integer(value, key, line));
    }
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_integer(value, key, line));
  } else if (key == "trials") {
    cfg.trials = static_cast<int>(parse_integer(value, key, line));
    if (cfg.trials < 1) { throw ConfigError("trials must be at least 1", key, line); }
  } else if (key == "family") {
    cfg.family = value;
    if (value != "s1" && value != "hn" && value != "all") { throw ConfigError("family must be s1, hn or all", key, line); }
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(parse_integer(value, key, line));
  } else {
    throw ConfigError("unknown key '" + key + "'", key, line);
  }
}

/// Line-oriented key=value file; blank lines and lines starting with '#' are skipped.
inline SuiteConfig parse_config_stream(std::istream & in, SuiteConfig cfg = {})
{
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const std::string t = detail::trim(text);
    if (t.empty() || t[0] == '#') { continue; }
    const auto eq = t.find('=');
    if (eq == std::string::npos) { throw ConfigError("expected key=value, got '" + t + "'", {}, line); }
    apply_setting(cfg, detail::trim(t.substr(0, eq)), t.substr(eq + 1), line);
  }
  return cfg;
}

inline SuiteConfig parse_config(const std::string & path, SuiteConfig cfg = {})
{
  std::ifstream in(path);
  if (!in) { throw IoError("cannot open config file '" + path + "'"); }
  return parse_config_stream(in, std::move(cfg));
}

}  // namespace isoparam::verify
