#include "fdshock.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "harness.hpp"
#include "shock_profile.hpp"
#include "verify.hpp"

namespace {

thread_local std::string g_last_error;

// invalid_argument and domain_error both derive from logic_error, so the
// specific catches must come first.
template <typename F>
fdshock_status wrap(F&& body) {
  try {
    g_last_error.clear();
    body();
    return FDSHOCK_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return FDSHOCK_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return FDSHOCK_ERR_DOMAIN;
  } catch (const std::logic_error& e) {
    g_last_error = e.what();
    return FDSHOCK_ERR_LOGIC;
  } catch (const std::runtime_error& e) {
    g_last_error = e.what();
    return FDSHOCK_ERR_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FDSHOCK_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return FDSHOCK_ERR_UNKNOWN;
  }
}

fdshock_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return FDSHOCK_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct fdshock_config {
  fdshock::Config cfg;
};

struct fdshock_profile {
  fdshock::RunConfig rc;
  fdshock::ProfileTable table;
};

extern "C" {

const char* fdshock_last_error(void) { return g_last_error.c_str(); }

fdshock_status fdshock_config_load(const char* path, fdshock_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return wrap([&] { *out = new fdshock_config{fdshock::Config::parse_file(path)}; });
}

fdshock_status fdshock_config_parse(const char* text, fdshock_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return wrap([&] { *out = new fdshock_config{fdshock::Config::parse_string(text)}; });
}

fdshock_status fdshock_config_set(fdshock_config* cfg, const char* key,
                                  const char* value) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return wrap([&] { cfg->cfg.set(key, value); });
}

void fdshock_config_free(fdshock_config* cfg) { delete cfg; }

fdshock_status fdshock_shock_speed(const fdshock_config* cfg, double* out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = fdshock::RunConfig::from(cfg->cfg).make_model().speed();
  });
}

fdshock_status fdshock_lambda_minus(const fdshock_config* cfg, double* out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  return wrap([&] {
    *out = fdshock::RunConfig::from(cfg->cfg).make_model().lambda_minus();
  });
}

fdshock_status fdshock_profile_build(const fdshock_config* cfg,
                                     fdshock_profile** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return wrap([&] {
    fdshock::RunConfig rc = fdshock::RunConfig::from(cfg->cfg);
    fdshock::ProfileTable table = fdshock::make_profile(rc);
    *out = new fdshock_profile{std::move(rc), std::move(table)};
  });
}

fdshock_status fdshock_profile_eval(const fdshock_profile* p, double z,
                                    double* u, double* uz) {
  if (!p) return null_arg("profile");
  return wrap([&] {
    if (u) *u = p->table.eval_U(z);
    if (uz) *uz = p->table.eval_Uz(z);
  });
}

fdshock_status fdshock_profile_tail_exponent(const fdshock_profile* p,
                                             double* out) {
  if (!p) return null_arg("profile");
  if (!out) return null_arg("out");
  return wrap([&] { *out = fdshock::right_tail_exponent_fit(p->table); });
}

void fdshock_profile_free(fdshock_profile* p) { delete p; }

fdshock_status fdshock_run_profile(const fdshock_config* cfg,
                                   const char* out_dir) {
  if (!cfg) return null_arg("cfg");
  return wrap([&] {
    const fdshock::RunConfig rc = fdshock::RunConfig::from(cfg->cfg);
    const fdshock::ProfileTable table = fdshock::make_profile(rc);
    fdshock::write_profile_outputs(rc, table,
                                   out_dir ? out_dir : rc.output_dir.c_str());
  });
}

fdshock_status fdshock_run_simulate(const fdshock_config* cfg,
                                    const char* out_dir) {
  if (!cfg) return null_arg("cfg");
  return wrap([&] {
    const fdshock::RunConfig rc = fdshock::RunConfig::from(cfg->cfg);
    const fdshock::ProfileTable table = fdshock::make_profile(rc);
    const fdshock::SimulationArtifacts art = fdshock::run_simulation(rc, table);
    fdshock::write_simulation_outputs(art, table,
                                      out_dir ? out_dir : rc.output_dir.c_str());
  });
}

fdshock_status fdshock_run_sweep(const fdshock_config* cfg,
                                 const char* out_dir) {
  if (!cfg) return null_arg("cfg");
  return wrap([&] {
    const fdshock::RunConfig rc = fdshock::RunConfig::from(cfg->cfg);
    const std::string dir = out_dir ? out_dir : rc.output_dir;
    const auto points = fdshock::run_sweep(rc, dir);
    fdshock::write_sweep_csv(points, dir);
  });
}

fdshock_status fdshock_run_verify(const fdshock_config* cfg,
                                  const char* out_dir, double tolerance_scale,
                                  char* report, size_t report_cap,
                                  int* failures) {
  if (!cfg) return null_arg("cfg");
  if (!failures) return null_arg("failures");
  return wrap([&] {
    const fdshock::RunConfig rc = fdshock::RunConfig::from(cfg->cfg);
    fdshock::VerifyOptions opts;
    opts.tolerance_scale = tolerance_scale;
    if (out_dir) opts.out_dir = out_dir;
    const auto results = fdshock::run_verification(rc, opts);
    std::ostringstream text;
    *failures = fdshock::print_report(results, text);
    if (report && report_cap > 0) {
      const std::string s = text.str();
      const size_t n = std::min(report_cap - 1, s.size());
      std::memcpy(report, s.data(), n);
      report[n] = '\0';
    }
  });
}

}  // extern "C"
