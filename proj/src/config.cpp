#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fdshock {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument("configuration key " + key +
                                ": expected a number, got '" + v + "'");
  }
  return x;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bad configuration line " +
                                  std::to_string(lineno) + ": '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("bad configuration line " +
                                  std::to_string(lineno) + ": empty key");
    if (cfg.kv_.count(key))
      throw std::invalid_argument("duplicate configuration key: " + key);
    cfg.kv_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open configuration file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end())
    throw std::invalid_argument("missing configuration key: " + key);
  return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_double(key, it->second);
}

long Config::get_long(const std::string& key) const {
  const double x = get_double(key);
  const long n = static_cast<long>(x);
  if (static_cast<double>(n) != x)
    throw std::invalid_argument("configuration key " + key +
                                ": expected an integer");
  return n;
}

long Config::get_long(const std::string& key, long fallback) const {
  return has(key) ? get_long(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw std::invalid_argument("configuration key " + key +
                              ": expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

RunConfig RunConfig::from(const Config& cfg) {
  static const std::set<std::string> known = {
      "model.kind",     "model.u_minus",      "model.m",
      "model.c2",       "model.c3",           "model.c4",
      "grid.L",         "grid.nx",            "solver.dt_max",
      "solver.cfl",     "solver.floor",       "solver.newton_tol",
      "solver.newton_max_iters",              "solver.muscl",
      "run.t_end",      "run.snapshot_times", "run.seed",
      "init.center",    "init.bump.amplitude",
      "init.bump.center",                     "init.bump.width",
      "profile.z_min",  "profile.z_max",      "profile.resolution",
      "energy.beta",    "energy.bound_factor",
      "ledger.record_every",                  "output.dir",
      "sweep.m_values", "sweep.centers"};
  for (const auto& [key, value] : cfg.entries()) {
    (void)value;
    if (!known.count(key))
      throw std::invalid_argument("unknown configuration key: " + key);
  }

  RunConfig rc;
  rc.model_kind = cfg.get_string("model.kind");
  if (rc.model_kind != "burgers" && rc.model_kind != "polynomial")
    throw std::invalid_argument(
        "model.kind must be 'burgers' or 'polynomial', got '" + rc.model_kind +
        "'");
  rc.u_minus = cfg.get_double("model.u_minus");
  rc.m = cfg.get_double("model.m");
  if (rc.model_kind == "polynomial") {
    rc.c2 = cfg.get_double("model.c2");
    rc.c3 = cfg.get_double("model.c3", 0.0);
    rc.c4 = cfg.get_double("model.c4", 0.0);
  } else {
    rc.c2 = 0.5;
  }

  rc.L = cfg.get_double("grid.L");
  rc.nx = static_cast<int>(cfg.get_long("grid.nx"));

  rc.solver.dt_max = cfg.get_double("solver.dt_max", 0.05);
  rc.solver.cfl = cfg.get_double("solver.cfl", 0.4);
  rc.solver.floor = cfg.get_double("solver.floor", 1e-12);
  rc.solver.newton_tol = cfg.get_double("solver.newton_tol", 1e-10);
  rc.solver.newton_max_iters =
      static_cast<int>(cfg.get_long("solver.newton_max_iters", 50));
  rc.solver.muscl = cfg.get_bool("solver.muscl", true);

  rc.t_end = cfg.get_double("run.t_end");
  rc.snapshot_times = cfg.get_double_list("run.snapshot_times", {});
  rc.seed = cfg.get_long("run.seed", 0);

  rc.center = cfg.get_double("init.center");
  rc.bump.amplitude = cfg.get_double("init.bump.amplitude", 0.0);
  rc.bump.center = cfg.get_double("init.bump.center", 0.0);
  rc.bump.width = cfg.get_double("init.bump.width", 1.0);

  rc.z_min = cfg.get_double("profile.z_min", -70.0);
  rc.z_max = cfg.get_double("profile.z_max", 190.0);
  rc.resolution = static_cast<int>(cfg.get_long("profile.resolution", 5200));

  rc.beta = cfg.get_double("energy.beta", 0.0);
  rc.bound_factor = cfg.get_double("energy.bound_factor", 10.0);

  rc.record_every = static_cast<int>(cfg.get_long("ledger.record_every", 20));
  rc.output_dir = cfg.get_string("output.dir", "out");

  rc.sweep_m_values =
      cfg.get_double_list("sweep.m_values", {0.6, 0.7, 0.75, 0.8, 0.9});
  rc.sweep_centers = cfg.get_double_list("sweep.centers", {20.0});

  // Fail early on anything the numerical modules would reject.
  rc.make_model();
  rc.make_grid();
  rc.solver.validate();
  if (!(rc.t_end > 0.0)) throw std::invalid_argument("run.t_end must be positive");
  if (rc.record_every < 1)
    throw std::invalid_argument("ledger.record_every must be >= 1");
  for (double ts : rc.snapshot_times) {
    if (ts < 0.0 || ts > rc.t_end)
      throw std::invalid_argument(
          "run.snapshot_times entries must lie in [0, t_end]");
  }
  if (!std::is_sorted(rc.snapshot_times.begin(), rc.snapshot_times.end()))
    throw std::invalid_argument("run.snapshot_times must be non-decreasing");
  return rc;
}

FluxModel RunConfig::make_model() const {
  if (model_kind == "polynomial")
    return FluxModel::polynomial(c2, c3, c4, u_minus, m);
  return FluxModel::burgers(u_minus, m);
}

}  // namespace fdshock
