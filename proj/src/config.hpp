#pragma once

#include <map>
#include <string>
#include <vector>

#include "flux_model.hpp"
#include "solver.hpp"

namespace fdshock {

// Flat `key = value` configuration with # comments and dotted keys.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

// Fully validated run parameters. Construction rejects missing required keys,
// unknown keys, and anything the flux/solver validators refuse.
struct RunConfig {
  std::string model_kind;  // "burgers" or "polynomial"
  double u_minus = 0.0;
  double m = 0.0;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0;

  double L = 0.0;
  int nx = 0;

  SolverConfig solver;

  double t_end = 0.0;
  std::vector<double> snapshot_times;
  long seed = 0;

  double center = 0.0;
  BumpSpec bump;

  double z_min = -70.0;
  double z_max = 190.0;
  int resolution = 5200;

  double beta = 0.0;          // 0 selects the maximal admissible value
  double bound_factor = 10.0;

  int record_every = 20;
  std::string output_dir = "out";

  std::vector<double> sweep_m_values;
  std::vector<double> sweep_centers;

  static RunConfig from(const Config& cfg);

  FluxModel make_model() const;
  Grid1D make_grid() const { return Grid1D(L, nx); }
};

}  // namespace fdshock
