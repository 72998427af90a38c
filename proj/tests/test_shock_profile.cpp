#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "flux_model.hpp"
#include "shock_profile.hpp"

using namespace fdshock;

namespace {

FluxModel baseline() { return FluxModel::burgers(2.0, 0.75); }

}  // namespace

TEST_CASE("ode right-hand side matches hand-computed values") {
  auto model = baseline();
  // U^{1-m} g(U) at U = 1/2: 2^{-1/4} * (1/8 - 1/2).
  CHECK(ode_rhs(model, 0.5) == doctest::Approx(-0.31533615572014295).epsilon(1e-14));
  // At the anchor U = 1 every power of U is exactly 1.
  CHECK(ode_rhs(model, 1.0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ode_rhs(model, 0.0), std::domain_error);
  CHECK_THROWS_AS(ode_rhs(model, -0.1), std::domain_error);
  CHECK_THROWS_AS(ode_rhs(model, 2.0), std::domain_error);
}

TEST_CASE("chained profile derivatives agree with rational reference values") {
  auto model = baseline();
  // At U = 1 (Burgers, u_minus = 2, m = 3/4) the chain is pure rational
  // arithmetic: P = -1/2, P' = -1/8, P'' = 35/32, P''' = 75/128.
  CHECK(profile_Uzz(model, 1.0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(profile_Uzzz(model, 1.0) == doctest::Approx(0.265625).epsilon(1e-14));
  CHECK(profile_Uzzzz(model, 1.0) == doctest::Approx(-0.208984375).epsilon(1e-13));
  CHECK(profile_Uzz(model, 0.5) == doctest::Approx(0.18230096702465678).epsilon(1e-13));
}

TEST_CASE("profile table reproduces the anchored monotone front") {
  auto model = baseline();
  auto table = build_profile(model, -30.0, 60.0, 1200);

  CHECK(table.eval_U(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(table.strictly_monotone());

  // Tabulation stops exactly at the relative-1e-3 handover states.
  CHECK(table.u_samples().back() == doctest::Approx(0.002).epsilon(1e-12));
  CHECK(table.u_samples().front() == doctest::Approx(1.998).epsilon(1e-12));

  // Decreasing through the whole sampled window, bounded by the end states.
  double prev = table.eval_U(-29.5);
  for (double z = -29.0; z <= 59.0; z += 0.5) {
    double u = table.eval_U(z);
    CHECK(u < prev);
    CHECK(u > 0.0);
    CHECK(u < 2.0);
    prev = u;
  }

  // The slope field is the ODE right-hand side evaluated on the table.
  for (double z : {-4.3, -1.0, 0.37, 2.0, 9.1}) {
    CHECK(table.eval_Uz(z) == ode_rhs(model, table.eval_U(z)));
  }

  // Interpolant solves the ODE: centered difference of eval_U vs eval_Uz.
  for (double z : {-2.5, 0.8, 5.0}) {
    double h = 1e-2;
    double fd = (table.eval_U(z + h) - table.eval_U(z - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(table.eval_Uz(z)).epsilon(5e-4));
  }
}

TEST_CASE("closed-form tails stitch continuously onto the table") {
  auto model = baseline();
  auto table = build_profile(model, -30.0, 60.0, 1200);

  double zr = table.z_right();
  CHECK(std::abs(table.eval_U(zr - 1e-9) - table.eval_U(zr + 1e-9)) < 1e-10);
  double zl = table.z_left();
  CHECK(std::abs(table.eval_U(zl - 1e-9) - table.eval_U(zl + 1e-9)) < 1e-10);

  // Far field behaves like the algebraic and exponential tails.
  CHECK(table.eval_U(59.0) < table.eval_U(zr + 1.0));
  CHECK(table.eval_U(-29.0) > 1.999);
  CHECK(table.eval_U(-29.0) < 2.0);
}

TEST_CASE("fitted tail rates recover the analytic decay laws") {
  auto model = baseline();
  auto table = build_profile(model, -30.0, 60.0, 1200);

  // Algebraic tail U ~ z^{-1/(1-m)} with 1/(1-m) = 4.
  CHECK(right_tail_exponent_fit(table) == doctest::Approx(4.0).epsilon(0.02));
  // Exponential approach at rate lambda_minus = 2^{1/4}.
  CHECK(model.lambda_minus() == doctest::Approx(1.18920711500272107).epsilon(1e-14));
  CHECK(left_tail_rate_fit(table) == doctest::Approx(model.lambda_minus()).epsilon(0.02));
}

TEST_CASE("derivative ratio suprema match the small-U asymptotics") {
  auto model = baseline();
  auto table = build_profile(model, -30.0, 60.0, 1200);
  auto r = derivative_bound_ratios(table);

  // Near U -> 0 the profile obeys U_z ~ -s U^{2-m}, so the normalized
  // derivatives tend to s^k (2-m)(3-2m)...: 1, 5/4, 15/8, 105/32.
  CHECK(r.r1 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(r.r1_right_limit == doctest::Approx(1.0).epsilon(0.01));
  CHECK(r.r2 == doctest::Approx(1.25).epsilon(0.01));
  CHECK(r.r3 == doctest::Approx(1.875).epsilon(0.02));
  CHECK(r.r4 == doctest::Approx(3.28125).epsilon(0.02));
  CHECK(std::isfinite(r.r1));
  CHECK(std::isfinite(r.r4));
}

TEST_CASE("doubling the tabulation resolution leaves the profile unchanged") {
  auto model = baseline();
  auto coarse = build_profile(model, -30.0, 60.0, 1200);
  auto fine = build_profile(model, -30.0, 60.0, 2400);

  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    double z = -28.0 + 86.0 * i / 2000.0;
    worst = std::max(worst, std::abs(coarse.eval_U(z) - fine.eval_U(z)));
  }
  CHECK(worst <= 1e-7 * 2.0);
}

TEST_CASE("sonic point sits at the anchor for the symmetric Burgers front") {
  auto model = baseline();
  auto table = build_profile(model, -30.0, 60.0, 1200);
  double xi = find_xi_star(table);
  CHECK(std::abs(xi) <= 1e-8);
  CHECK(std::abs(model.f1(table.eval_U(xi)) - model.speed()) <= 1e-10);
}

TEST_CASE("quartic flux profile reproduces its own decay laws and sonic point") {
  auto model = FluxModel::polynomial(0.5, 0.1, 0.02, 2.0, 0.6);
  auto table = build_profile(model, -40.0, 80.0, 1500);

  CHECK(table.strictly_monotone());
  CHECK(right_tail_exponent_fit(table) == doctest::Approx(2.5).epsilon(0.02));
  CHECK(left_tail_rate_fit(table) == doctest::Approx(model.lambda_minus()).epsilon(0.02));

  double xi = find_xi_star(table);
  CHECK(std::abs(model.f1(table.eval_U(xi)) - model.speed()) <= 1e-9);
  CHECK(xi < 0.0);  // f'(u_minus/2) < s for this flux, so the root sits left of 0
}

TEST_CASE("monotonicity guard catches an injected fold") {
  auto model = baseline();
  auto good = build_profile(model, -15.0, 30.0, 300);
  REQUIRE(good.strictly_monotone());

  auto z = good.z_samples();
  auto u = good.u_samples();
  std::vector<double> slope(z.size());
  for (size_t i = 0; i < z.size(); ++i) slope[i] = ode_rhs(model, u[i]);
  u[u.size() / 2] += 0.1;  // local bump breaks strict descent

  ProfileTable bad(model, z, u, slope);
  CHECK_FALSE(bad.strictly_monotone());
}

TEST_CASE("profile construction rejects malformed windows") {
  auto model = baseline();
  CHECK_THROWS_AS(build_profile(model, 5.0, 60.0, 1200), std::invalid_argument);
  CHECK_THROWS_AS(build_profile(model, -30.0, -1.0, 1200), std::invalid_argument);
  CHECK_THROWS_AS(build_profile(model, -30.0, 60.0, 50), std::invalid_argument);
}
