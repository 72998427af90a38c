#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "fdshock.h"

namespace fs = std::filesystem;

namespace {

const char* kMini =
    "model.kind = burgers\n"
    "model.u_minus = 2\n"
    "model.m = 0.75\n"
    "grid.L = 80\n"
    "grid.nx = 400\n"
    "run.t_end = 1\n"
    "init.center = 20\n";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

struct ConfigHandle {
  fdshock_config* cfg = nullptr;
  explicit ConfigHandle(const char* text) {
    REQUIRE(fdshock_config_parse(text, &cfg) == FDSHOCK_OK);
  }
  ~ConfigHandle() { fdshock_config_free(cfg); }
};

}  // namespace

TEST_CASE("config parsing and error surface") {
  fdshock_config* cfg = nullptr;
  CHECK(fdshock_config_parse("a = 1\na = 2\n", &cfg) ==
        FDSHOCK_ERR_INVALID_ARGUMENT);
  CHECK(cfg == nullptr);
  CHECK(std::strstr(fdshock_last_error(), "duplicate") != nullptr);

  CHECK(fdshock_config_load("/definitely/not/here.cfg", &cfg) ==
        FDSHOCK_ERR_INVALID_ARGUMENT);
  CHECK(fdshock_config_parse(nullptr, &cfg) == FDSHOCK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalar probes of the configured model") {
  ConfigHandle h(kMini);
  double speed = 0.0, rate = 0.0;
  REQUIRE(fdshock_shock_speed(h.cfg, &speed) == FDSHOCK_OK);
  CHECK(speed == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(fdshock_lambda_minus(h.cfg, &rate) == FDSHOCK_OK);
  CHECK(rate == doctest::Approx(1.18920711500272107).epsilon(1e-15));
  CHECK(std::strcmp(fdshock_last_error(), "") == 0);
}

TEST_CASE("validation failures name the offense") {
  ConfigHandle h(kMini);
  REQUIRE(fdshock_config_set(h.cfg, "model.m", "1.2") == FDSHOCK_OK);
  fdshock_profile* p = nullptr;
  CHECK(fdshock_profile_build(h.cfg, &p) == FDSHOCK_ERR_INVALID_ARGUMENT);
  CHECK(p == nullptr);
  CHECK(std::strstr(fdshock_last_error(), "1/2<m<1") != nullptr);

  ConfigHandle missing("model.kind = burgers\n");
  double speed = 0.0;
  CHECK(fdshock_shock_speed(missing.cfg, &speed) ==
        FDSHOCK_ERR_INVALID_ARGUMENT);
  CHECK(std::strstr(fdshock_last_error(), "model.u_minus") != nullptr);
}

TEST_CASE("profile handle evaluates the wave") {
  ConfigHandle h(kMini);
  fdshock_profile* p = nullptr;
  REQUIRE(fdshock_profile_build(h.cfg, &p) == FDSHOCK_OK);
  REQUIRE(p != nullptr);

  double u = 0.0, uz = 0.0;
  REQUIRE(fdshock_profile_eval(p, 0.0, &u, &uz) == FDSHOCK_OK);
  CHECK(u == doctest::Approx(1.0).epsilon(1e-12));  // anchored at u_minus/2
  CHECK(uz < 0.0);
  REQUIRE(fdshock_profile_eval(p, -30.0, &u, nullptr) == FDSHOCK_OK);
  CHECK(u == doctest::Approx(2.0).epsilon(1e-9));

  double exponent = 0.0;
  REQUIRE(fdshock_profile_tail_exponent(p, &exponent) == FDSHOCK_OK);
  CHECK(exponent == doctest::Approx(4.0).epsilon(0.02));
  fdshock_profile_free(p);
}

TEST_CASE("profile pipeline writes deterministic artifacts") {
  ConfigHandle h(kMini);
  const std::string da = "/tmp/fdshock_capi/prof_a";
  const std::string db = "/tmp/fdshock_capi/prof_b";
  fs::remove_all(da);
  fs::remove_all(db);
  REQUIRE(fdshock_run_profile(h.cfg, da.c_str()) == FDSHOCK_OK);
  REQUIRE(fdshock_run_profile(h.cfg, db.c_str()) == FDSHOCK_OK);
  CHECK(slurp(da + "/profile.csv") == slurp(db + "/profile.csv"));
  CHECK(slurp(da + "/profile_summary.json") ==
        slurp(db + "/profile_summary.json"));
  CHECK(slurp(da + "/profile_summary.json").find("\"lambda_minus\"") !=
        std::string::npos);
}

TEST_CASE("simulation pipeline honors the output override") {
  ConfigHandle h(kMini);
  REQUIRE(fdshock_config_set(h.cfg, "run.t_end", "0.5") == FDSHOCK_OK);
  const std::string dir = "/tmp/fdshock_capi/sim";
  fs::remove_all(dir);
  REQUIRE(fdshock_run_simulate(h.cfg, dir.c_str()) == FDSHOCK_OK);
  CHECK(fs::exists(dir + "/timeseries.csv"));
  CHECK(fs::exists(dir + "/ledger.csv"));
  CHECK(fs::exists(dir + "/run_summary.json"));
}

TEST_CASE("null handles are rejected, not dereferenced") {
  CHECK(fdshock_run_simulate(nullptr, "/tmp/x") == FDSHOCK_ERR_INVALID_ARGUMENT);
  CHECK(fdshock_profile_eval(nullptr, 0.0, nullptr, nullptr) ==
        FDSHOCK_ERR_INVALID_ARGUMENT);
  int failures = 0;
  CHECK(fdshock_run_verify(nullptr, nullptr, 1.0, nullptr, 0, &failures) ==
        FDSHOCK_ERR_INVALID_ARGUMENT);
  ConfigHandle h(kMini);
  CHECK(fdshock_run_verify(h.cfg, nullptr, 1.0, nullptr, 0, nullptr) ==
        FDSHOCK_ERR_INVALID_ARGUMENT);
}
