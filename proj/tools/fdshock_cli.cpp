// Command-line front end. Links only the C API, exactly as an external
// client would.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdshock.h"

namespace {

// Loads the config file and applies any --set/--record-every overrides.
// Returns nullptr after printing the error.
fdshock_config* load_config(const std::string& path, long record_every,
                            const std::vector<std::string>& overrides) {
  fdshock_config* cfg = nullptr;
  if (fdshock_config_load(path.c_str(), &cfg) != FDSHOCK_OK) {
    std::fprintf(stderr, "error: %s\n", fdshock_last_error());
    return nullptr;
  }
  if (record_every > 0 &&
      fdshock_config_set(cfg, "ledger.record_every",
                         std::to_string(record_every).c_str()) != FDSHOCK_OK) {
    std::fprintf(stderr, "error: %s\n", fdshock_last_error());
    fdshock_config_free(cfg);
    return nullptr;
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                   kv.c_str());
      fdshock_config_free(cfg);
      return nullptr;
    }
    if (fdshock_config_set(cfg, kv.substr(0, eq).c_str(),
                           kv.substr(eq + 1).c_str()) != FDSHOCK_OK) {
      std::fprintf(stderr, "error: %s\n", fdshock_last_error());
      fdshock_config_free(cfg);
      return nullptr;
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Viscous shock layer laboratory for the fast-diffusion conservation law "
      "on the half-line"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long record_every = 0;
  double tolerance_scale = 1.0;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (key = value lines)")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--set", overrides, "override a configuration key (key=value)");
  };

  CLI::App* profile = app.add_subcommand(
      "profile", "build the traveling-wave profile and emit its table");
  add_common(profile);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the coupled half-line simulation");
  add_common(simulate);
  simulate->add_option("--record-every", record_every,
                       "record the diagnostics every n-th step");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the full property suite and report pass/fail per criterion");
  add_common(verify);
  verify->add_option("--tolerance-scale", tolerance_scale,
                     "scale applied to every tolerance (<1 tightens)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the m x center parameter sweep concurrently");
  add_common(sweep);
  sweep->add_option("--record-every", record_every,
                    "record the diagnostics every n-th step");

  CLI11_PARSE(app, argc, argv);

  fdshock_config* cfg = load_config(config_path, record_every, overrides);
  if (!cfg) return 2;
  const char* dir = out_dir.empty() ? nullptr : out_dir.c_str();

  int rc = 0;
  if (profile->parsed()) {
    if (fdshock_run_profile(cfg, dir) != FDSHOCK_OK) {
      std::fprintf(stderr, "error: %s\n", fdshock_last_error());
      rc = 2;
    }
  } else if (simulate->parsed()) {
    if (fdshock_run_simulate(cfg, dir) != FDSHOCK_OK) {
      std::fprintf(stderr, "error: %s\n", fdshock_last_error());
      rc = 2;
    }
  } else if (sweep->parsed()) {
    if (fdshock_run_sweep(cfg, dir) != FDSHOCK_OK) {
      std::fprintf(stderr, "error: %s\n", fdshock_last_error());
      rc = 2;
    }
  } else if (verify->parsed()) {
    std::string report(1 << 16, '\0');
    int failures = 0;
    if (fdshock_run_verify(cfg, dir, tolerance_scale, report.data(),
                           report.size(), &failures) != FDSHOCK_OK) {
      std::fprintf(stderr, "error: %s\n", fdshock_last_error());
      rc = 2;
    } else {
      std::fputs(report.c_str(), stdout);
      std::printf("%d of 13 criteria failed\n", failures);
      rc = failures > 0 ? 1 : 0;
    }
  }

  fdshock_config_free(cfg);
  return rc;
}
