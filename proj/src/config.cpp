#include "twofront/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "twofront/errors.hpp"

namespace twofront {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& value, const std::string& key,
                    int line) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno != 0 ||
      !std::isfinite(x)) {
    throw ParseError("line " + std::to_string(line) + ": value of '" + key +
                     "' is not a finite number: '" + value + "'");
  }
  return x;
}

std::size_t parse_size(const std::string& value, const std::string& key,
                       int line) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno != 0 ||
      value.find('-') != std::string::npos) {
    throw ParseError("line " + std::to_string(line) + ": value of '" + key +
                     "' is not a nonnegative integer: '" + value + "'");
  }
  return static_cast<std::size_t>(x);
}

std::vector<double> parse_list(const std::string& value,
                               const std::string& key, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_double(trim(item), key, line));
  }
  if (out.empty()) {
    throw ParseError("line " + std::to_string(line) + ": '" + key +
                     "' needs at least one value");
  }
  return out;
}

const std::set<std::string> kModelKeys = {"lambda", "b",  "m",  "d",  "c",
                                          "mu",     "rho", "h0", "g0"};

const std::set<std::string> kOtherKeys = {
    "u0_kind",       "u0_amplitude", "u0_csv",       "v0_kind",
    "v0_amplitude",  "v0_csv",       "n_u",          "n_v",
    "dt_init",       "t_end",        "cfl_front",    "snapshot_every",
    "vanish_eps",    "growth_window", "backend",      "output_dir",
    "seed",          "workers"};

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
  {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
      ++line;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      const std::string stripped = trim(raw);
      if (stripped.empty()) continue;
      const std::size_t eq = stripped.find('=');
      if (eq == std::string::npos) {
        throw ParseError("line " + std::to_string(line) +
                         ": expected 'key = value'");
      }
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) {
        throw ParseError("line " + std::to_string(line) + ": empty key");
      }
      const bool known = kModelKeys.count(key) || kOtherKeys.count(key) ||
                         (key.rfind("sweep_", 0) == 0 &&
                          kModelKeys.count(key.substr(6)));
      if (!known) {
        throw ParseError("line " + std::to_string(line) + ": unknown key '" +
                         key + "'");
      }
      const auto [it, inserted] = kv.emplace(key, std::make_pair(value, line));
      if (!inserted) {
        throw ParseError("duplicate key '" + key + "' at lines " +
                         std::to_string(it->second.second) + " and " +
                         std::to_string(line));
      }
    }
  }

  RunConfig rc;
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::pair<std::string, int>{"", -1};
    return it->second;
  };
  auto number = [&](const std::string& key, double& dst) {
    const auto [value, line] = take(key);
    if (line > 0) dst = parse_double(value, key, line);
    return line > 0;
  };

  for (const auto& key : kModelKeys) {
    if (!kv.count(key)) {
      throw ValidationError("model parameter '" + key +
                            "' is required (no defaults)");
    }
  }
  number("lambda", rc.params.lambda);
  number("b", rc.params.b);
  number("m", rc.params.m);
  number("d", rc.params.d);
  number("c", rc.params.c);
  number("mu", rc.params.mu);
  number("rho", rc.params.rho);
  number("h0", rc.params.h0);
  number("g0", rc.params.g0);
  if (auto err = rc.params.validate()) throw ValidationError(*err);

  for (const char* key : {"u0_kind", "v0_kind"}) {
    const auto [value, line] = take(key);
    if (line > 0) {
      if (value != "cosine" && value != "csv") {
        throw ValidationError(std::string(key) +
                              " must be 'cosine' or 'csv'");
      }
      (key[0] == 'u' ? rc.u0_kind : rc.v0_kind) = value;
    }
  }
  number("u0_amplitude", rc.u0_amplitude);
  number("v0_amplitude", rc.v0_amplitude);
  if (!(rc.u0_amplitude > 0.0) || !(rc.v0_amplitude > 0.0)) {
    throw ValidationError("profile amplitudes must be positive");
  }
  if (auto [value, line] = take("u0_csv"); line > 0) rc.u0_csv = value;
  if (auto [value, line] = take("v0_csv"); line > 0) rc.v0_csv = value;
  if (rc.u0_kind == "csv" && rc.u0_csv.empty()) {
    throw ValidationError("u0_kind = csv requires u0_csv");
  }
  if (rc.v0_kind == "csv" && rc.v0_csv.empty()) {
    throw ValidationError("v0_kind = csv requires v0_csv");
  }

  if (auto [value, line] = take("n_u"); line > 0) {
    rc.solver.n_u = parse_size(value, "n_u", line);
  }
  if (auto [value, line] = take("n_v"); line > 0) {
    rc.solver.n_v = parse_size(value, "n_v", line);
  }
  number("dt_init", rc.solver.dt_init);
  number("t_end", rc.solver.t_end);
  number("cfl_front", rc.solver.cfl_front);
  number("snapshot_every", rc.solver.snapshot_every);
  number("vanish_eps", rc.solver.vanish_eps);
  number("growth_window", rc.solver.growth_window);
  if (auto [value, line] = take("backend"); line > 0) {
    if (value == "serial") {
      rc.solver.backend = Backend::serial;
    } else if (value == "openmp") {
      rc.solver.backend = Backend::openmp;
    } else {
      throw ValidationError("backend must be 'serial' or 'openmp'");
    }
  }
  if (auto err = rc.solver.validate()) throw ValidationError(*err);

  if (auto [value, line] = take("output_dir"); line > 0) {
    rc.output_dir = value;
  }
  if (auto [value, line] = take("seed"); line > 0) {
    rc.seed = static_cast<std::uint64_t>(parse_size(value, "seed", line));
  }
  if (auto [value, line] = take("workers"); line > 0) {
    const std::size_t w = parse_size(value, "workers", line);
    if (w < 1) throw ValidationError("workers must be at least 1");
    rc.workers = static_cast<int>(w);
  }

  for (const auto& [key, vl] : kv) {
    if (key.rfind("sweep_", 0) != 0) continue;
    const std::string param = key.substr(6);
    auto values = parse_list(vl.first, key, vl.second);
    for (double x : values) {
      if (!(x > 0.0)) {
        throw ValidationError(key + " values must be positive");
      }
    }
    rc.sweep[param] = std::move(values);
  }
  return rc;
}

namespace {

std::vector<double> load_profile(const std::string& path, std::size_t n,
                                 const char* which) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(std::string(which) + " profile file not readable: " +
                     path);
  }
  std::vector<double> w;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    w.push_back(parse_double(stripped, which, line));
  }
  if (w.size() != n) {
    throw ValidationError(std::string(which) + " profile has " +
                          std::to_string(w.size()) + " samples, expected " +
                          std::to_string(n));
  }
  return w;
}

}  // namespace

InitialData make_initial_data(const RunConfig& rc) {
  InitialData init;
  init.u0 = rc.u0_kind == "csv"
                ? load_profile(rc.u0_csv, rc.solver.n_u, "u0")
                : cosine_profile(rc.u0_amplitude, rc.solver.n_u);
  init.v0 = rc.v0_kind == "csv"
                ? load_profile(rc.v0_csv, rc.solver.n_v, "v0")
                : cosine_profile(rc.v0_amplitude, rc.solver.n_v);
  if (auto err = init.validate()) throw ValidationError(*err);
  return init;
}

}  // namespace twofront
