#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <vector>

#include "config.hpp"
#include "harness.hpp"
#include "verify.hpp"

using namespace fdshock;

namespace {

RunConfig small_config() {
  return RunConfig::from(Config::parse_string(
      "model.kind = burgers\n"
      "model.u_minus = 2\n"
      "model.m = 0.75\n"
      "grid.L = 80\n"
      "grid.nx = 400\n"
      "run.t_end = 1.5\n"
      "init.center = 20\n"
      "init.bump.amplitude = 0.05\n"
      "init.bump.center = 10\n"
      "init.bump.width = 2\n"
      "ledger.record_every = 10\n"));
}

}  // namespace

TEST_CASE("tabulated profile satisfies its ODE; corruption is detected") {
  RunConfig rc = small_config();
  const ProfileTable good = make_profile(rc);
  CHECK(profile_ode_residual(good) <= 1e-8);
  CHECK(good.strictly_monotone());

  // Inject a mid-table defect through the raw constructor: the residual
  // blows up by orders of magnitude and monotonicity breaks.
  std::vector<double> z = good.z_samples();
  std::vector<double> u = good.u_samples();
  std::vector<double> slope(u.size());
  const size_t mid = u.size() / 2;
  u[mid] = u[mid - 1] + 1e-3;  // above its left neighbor: not decreasing
  for (size_t i = 0; i < u.size(); ++i) slope[i] = 0.0;
  const ProfileTable bad(good.model(), z, u, slope);
  CHECK(profile_ode_residual(bad) > 1e-4);
  CHECK_FALSE(bad.strictly_monotone());
}

TEST_CASE("report prints one line per criterion and counts failures") {
  std::vector<CriterionResult> results;
  results.push_back({1, "first", true, 1e-9, 1e-8, "fine"});
  results.push_back({7, "seventh", false, 0.5, 1e-3, "too big"});
  std::ostringstream out;
  const int failures = print_report(results, out);
  CHECK(failures == 1);
  const std::string text = out.str();
  CHECK(text.find("[PASS]  1 first") != std::string::npos);
  CHECK(text.find("[FAIL]  7 seventh") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("suite runs end to end and tolerances are scale-sensitive") {
  const RunConfig rc = small_config();

  VerifyOptions loose;
  loose.tolerance_scale = 1e6;  // everything passes except hard invariants
  loose.out_dir = "/tmp/fdshock_verify/loose";
  const auto relaxed = run_verification(rc, loose);
  REQUIRE(relaxed.size() == 13);
  for (size_t i = 0; i < relaxed.size(); ++i)
    CHECK(relaxed[i].id == static_cast<int>(i) + 1);

  // Structural criteria must hold even at desk scale: the profile checks,
  // the shift lower bound, and determinism do not depend on run length.
  VerifyOptions normal;
  normal.out_dir = "/tmp/fdshock_verify/normal";
  const auto results = run_verification(rc, normal);
  REQUIRE(results.size() == 13);
  for (int id : {1, 2, 3, 4, 6, 13}) {
    INFO("criterion ", id, ": ", results[id - 1].detail);
    CHECK(results[id - 1].pass);
  }

  VerifyOptions tight;
  tight.tolerance_scale = 1e-9;
  tight.out_dir = "/tmp/fdshock_verify/tight";
  const auto strict = run_verification(rc, tight);
  int n_normal = 0, n_tight = 0;
  for (const auto& r : results) n_normal += r.pass ? 0 : 1;
  for (const auto& r : strict) n_tight += r.pass ? 0 : 1;
  CHECK(n_tight > n_normal);
  CHECK_FALSE(strict[0].pass);  // the ODE residual cannot meet 1e-17
}
