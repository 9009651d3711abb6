#ifndef COOPGROW_CONFIG_HPP
#define COOPGROW_CONFIG_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "coopgrow/errors.hpp"
#include "coopgrow/experiments.hpp"
#include "coopgrow/io.hpp"
#include "coopgrow/simulation.hpp"

namespace coopgrow {

/**
 * Everything a CLI command needs. Defaults:
 *
 *   mechanism=ba L=4 beta=1 n=0.001 r=auto pc_growth=0 seed=1
 *   r_min=1.2 r_max=6 r_steps=25 (r_grid overrides the three when given)
 *   ni=1000 nmax=3000 realizations=30 window=50 threshold=0.5
 *   M=50 ni_list=4,10,20,50,100,200,500,1000 n_target=5000 eps=auto (2/M)
 *   N=1000 (netgen size)
 *   workers=$COOPGROW_WORKERS or the hardware thread count, out_dir=.
 *
 * r=auto is only meaningful for `fixation`, which then scans the r grid and
 * uses bracket midpoint + bracket width.
 */
struct RunConfig {
  SimParams sim;
  std::optional<double> r;  // empty = auto
  double r_min = 1.2;
  double r_max = 6.0;
  std::size_t r_steps = 25;
  std::optional<std::vector<double>> r_grid_explicit;
  std::size_t ni = 1000;
  std::size_t nmax = 3000;
  std::size_t realizations = 30;
  std::size_t window = 50;
  double threshold = 0.5;
  std::size_t M = 50;
  std::vector<std::size_t> ni_list{4, 10, 20, 50, 100, 200, 500, 1000};
  std::size_t n_target = 5000;
  std::optional<double> eps;  // empty = 2/M
  std::size_t N = 1000;
  std::size_t workers = 1;
  std::string out_dir = ".";

  std::vector<double> r_grid() const {
    if (r_grid_explicit) return *r_grid_explicit;
    std::vector<double> g;
    g.reserve(r_steps);
    if (r_steps == 1) return {r_min};
    const double step = (r_max - r_min) / static_cast<double>(r_steps - 1);
    for (std::size_t i = 0; i < r_steps; ++i) g.push_back(r_min + step * static_cast<double>(i));
    return g;
  }

  double seed_eps() const { return eps ? *eps : default_seed_eps(M); }
  EnsembleOptions ensemble() const { return {workers, window}; }
};

inline std::size_t default_workers() {
  if (const char* env = std::getenv("COOPGROW_WORKERS")) {
    std::size_t w = 0;
    const std::string_view sv(env);
    if (std::from_chars(sv.data(), sv.data() + sv.size(), w).ec == std::errc{} && w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Keys accepted in config files and as --flags (with '-' for '_').
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "mechanism", "L",         "beta",    "n",    "r",        "pc_growth", "seed",     "r_min",
      "r_max",     "r_steps",   "r_grid",  "ni",   "nmax",     "realizations", "window", "threshold",
      "M",         "ni_list",   "n_target", "eps", "N",        "workers",   "out_dir"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError(key, "expected a real number, got '" + v + "'");
  return x;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(key, "expected a non-negative integer, got '" + v + "'");
  return x;
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s;
}

}  // namespace detail

inline std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

/// Applies one key=value assignment; throws ConfigError naming the key.
inline void set_config_value(RunConfig& cfg, std::string key, const std::string& value) {
  using namespace detail;
  key = normalize_key(std::move(key));
  const auto& v = value;
  if (key == "mechanism") {
    try {
      cfg.sim.mechanism = parse_mechanism(v);
    } catch (const InvalidParameter& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "L") {
    cfg.sim.L = parse_uint(key, v);
  } else if (key == "beta") {
    cfg.sim.beta = parse_real(key, v);
  } else if (key == "n") {
    cfg.sim.n = parse_real(key, v);
  } else if (key == "r") {
    if (v == "auto") cfg.r.reset();
    else cfg.r = parse_real(key, v);
  } else if (key == "pc_growth") {
    cfg.sim.pc_growth = parse_real(key, v);
  } else if (key == "seed") {
    cfg.sim.seed = parse_uint(key, v);
  } else if (key == "r_min") {
    cfg.r_min = parse_real(key, v);
  } else if (key == "r_max") {
    cfg.r_max = parse_real(key, v);
  } else if (key == "r_steps") {
    cfg.r_steps = parse_uint(key, v);
  } else if (key == "r_grid") {
    std::vector<double> g;
    for (const auto& item : split_list(v)) g.push_back(parse_real(key, item));
    cfg.r_grid_explicit = std::move(g);
  } else if (key == "ni") {
    cfg.ni = parse_uint(key, v);
  } else if (key == "nmax") {
    cfg.nmax = parse_uint(key, v);
  } else if (key == "realizations") {
    cfg.realizations = parse_uint(key, v);
  } else if (key == "window") {
    cfg.window = parse_uint(key, v);
  } else if (key == "threshold") {
    cfg.threshold = parse_real(key, v);
  } else if (key == "M") {
    cfg.M = parse_uint(key, v);
  } else if (key == "ni_list") {
    std::vector<std::size_t> l;
    for (const auto& item : split_list(v)) l.push_back(parse_uint(key, item));
    cfg.ni_list = std::move(l);
  } else if (key == "n_target") {
    cfg.n_target = parse_uint(key, v);
  } else if (key == "eps") {
    if (v == "auto") cfg.eps.reset();
    else cfg.eps = parse_real(key, v);
  } else if (key == "N") {
    cfg.N = parse_uint(key, v);
  } else if (key == "workers") {
    cfg.workers = parse_uint(key, v);
  } else if (key == "out_dir") {
    cfg.out_dir = v;
  } else {
    throw ConfigError(key, "unknown key");
  }
}

/// Checks every constituent invariant; errors name the responsible key.
inline void validate_config(const RunConfig& cfg) {
  if (cfg.r && !(*cfg.r > 1.0)) throw ConfigError("r", "must be > 1");
  if (!(cfg.sim.beta >= 0.0)) throw ConfigError("beta", "must be >= 0");
  if (!(cfg.sim.n > 0.0)) throw ConfigError("n", "must be > 0");
  if (cfg.sim.L < 1) throw ConfigError("L", "must be >= 1");
  if (!(cfg.sim.pc_growth >= 0.0 && cfg.sim.pc_growth <= 1.0)) throw ConfigError("pc_growth", "must be in [0,1]");
  if (cfg.r_grid_explicit) {
    const auto& g = *cfg.r_grid_explicit;
    if (g.empty()) throw ConfigError("r_grid", "must not be empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 1.0)) throw ConfigError("r_grid", "values must be > 1");
      if (i && !(g[i] > g[i - 1])) throw ConfigError("r_grid", "must be strictly increasing");
    }
  } else {
    if (cfg.r_steps < 1) throw ConfigError("r_steps", "must be >= 1");
    if (!(cfg.r_min > 1.0)) throw ConfigError("r_min", "must be > 1");
    if (cfg.r_steps > 1 && !(cfg.r_max > cfg.r_min)) throw ConfigError("r_max", "must exceed r_min");
  }
  if (cfg.ni < cfg.sim.L) throw ConfigError("ni", "must be >= L");
  if (cfg.nmax < cfg.ni) throw ConfigError("nmax", "must be >= ni");
  if (cfg.realizations < 1) throw ConfigError("realizations", "must be >= 1");
  if (cfg.window < 1) throw ConfigError("window", "must be >= 1");
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) throw ConfigError("threshold", "must be in (0,1)");
  if (cfg.M < 1) throw ConfigError("M", "must be >= 1");
  if (cfg.ni_list.empty()) throw ConfigError("ni_list", "must not be empty");
  for (std::size_t i = 0; i < cfg.ni_list.size(); ++i) {
    if (cfg.ni_list[i] < cfg.sim.L) throw ConfigError("ni_list", "values must be >= L");
    if (i && !(cfg.ni_list[i] > cfg.ni_list[i - 1])) throw ConfigError("ni_list", "must be strictly increasing");
  }
  if (cfg.eps && !(*cfg.eps > 0.0 && *cfg.eps < 1.0)) throw ConfigError("eps", "must be in (0,1)");
  if (cfg.N < cfg.sim.L) throw ConfigError("N", "must be >= L");
  if (cfg.workers < 1) throw ConfigError("workers", "must be >= 1");
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat `key=value` text, one per line, `#` starts a comment.
inline KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key=value");
    kv.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return kv;
}

/// File contents first, then flag overrides; later assignments win.
inline RunConfig parse_config(std::string_view file_text, const KeyValues& overrides = {}) {
  RunConfig cfg;
  cfg.workers = default_workers();
  for (const auto& [k, v] : parse_key_values(file_text)) set_config_value(cfg, k, v);
  for (const auto& [k, v] : overrides) set_config_value(cfg, k, v);
  validate_config(cfg);
  return cfg;
}

/**
 * Recovers config assignments from an output file header. Accepts both the
 * "# key=value" lines of CSV headers and the single-line edge-list header
 * ("# nodes=... mechanism=... L=... seed=..."). Keys that are not config
 * keys are skipped; `nodes` maps to N.
 */
inline KeyValues config_from_header(std::string_view text) {
  KeyValues kv;
  const auto& keys = config_keys();
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("# ", 0) != 0) continue;
    std::istringstream tokens(line.substr(2));
    for (std::string tok; tokens >> tok;) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      std::string key = tok.substr(0, eq);
      if (key == "nodes") key = "N";
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) continue;
      if (key == "workers" || key == "out_dir") continue;
      kv.emplace_back(key, tok.substr(eq + 1));
    }
  }
  return kv;
}

/// Fully resolved config as header metadata. Excludes workers and out_dir,
/// which never affect file contents.
inline Metadata config_metadata(const RunConfig& cfg, std::string_view command) {
  Metadata m;
  m.emplace_back("command", std::string(command));
  for (auto& kv : cfg.sim.metadata())
    if (kv.first != "r") m.push_back(std::move(kv));
  m.emplace_back("r", cfg.r ? fmt_exact(*cfg.r) : "auto");
  std::vector<std::string> grid;
  for (double x : cfg.r_grid()) grid.push_back(fmt_exact(x));
  m.emplace_back("r_grid", detail::join(grid));
  m.emplace_back("ni", std::to_string(cfg.ni));
  m.emplace_back("nmax", std::to_string(cfg.nmax));
  m.emplace_back("realizations", std::to_string(cfg.realizations));
  m.emplace_back("window", std::to_string(cfg.window));
  m.emplace_back("threshold", fmt_exact(cfg.threshold));
  m.emplace_back("M", std::to_string(cfg.M));
  std::vector<std::string> nis;
  for (auto x : cfg.ni_list) nis.push_back(std::to_string(x));
  m.emplace_back("ni_list", detail::join(nis));
  m.emplace_back("n_target", std::to_string(cfg.n_target));
  m.emplace_back("eps", cfg.eps ? fmt_exact(*cfg.eps) : "auto");
  m.emplace_back("N", std::to_string(cfg.N));
  m.emplace_back("seed_network", "clique");
  m.emplace_back("growth_rounding", "floor_with_carry");
  return m;
}

}  // namespace coopgrow

#endif  // COOPGROW_CONFIG_HPP
