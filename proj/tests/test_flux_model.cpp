#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "flux_model.hpp"

using namespace fdshock;

TEST_CASE("Rankine-Hugoniot speed for quadratic flux") {
  CHECK(FluxModel::burgers(2.0, 0.75).speed() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(FluxModel::burgers(1.0, 0.75).speed() == doctest::Approx(0.5).epsilon(1e-15));
  // s = u_minus/2 scales linearly with the left state for f = u^2/2.
  for (double um : {1.0, 2.0, 3.0, 4.0})
    CHECK(FluxModel::burgers(um, 0.6).speed() == doctest::Approx(0.5 * um).epsilon(1e-15));
}

TEST_CASE("Rankine-Hugoniot speed for a cubic correction") {
  const auto mdl = FluxModel::polynomial(0.5, 0.1, 0.0, 2.0, 0.75);
  CHECK(mdl.speed() == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("g vanishes at both shock states and is negative inside") {
  const auto mdl = FluxModel::burgers(2.0, 0.75);
  CHECK(mdl.g(0.0) == 0.0);
  CHECK(std::abs(mdl.g(2.0)) <= 1e-12);
  CHECK(mdl.g(1.0) == doctest::Approx(-0.5).epsilon(1e-15));
  for (int i = 1; i < 40; ++i) CHECK(mdl.g(2.0 * i / 40.0) < 0.0);
}

TEST_CASE("admissibility of the default models") {
  const auto a = FluxModel::burgers(2.0, 0.75).check_admissibility();
  CHECK(a.lax);
  CHECK(a.entropy);
  CHECK(a.convex);
  CHECK(a.all());

  const auto b = FluxModel::polynomial(0.5, 0.1, 0.02, 2.0, 0.6).check_admissibility();
  CHECK(b.all());
}

TEST_CASE("overriding the shock speed breaks the chord condition") {
  const auto fast = FluxModel::burgers(2.0, 0.75).with_shock_speed(2.5);
  const auto a = fast.check_admissibility();
  CHECK_FALSE(a.entropy);  // g(u) = u^2/2 - 2.5 u < 0 everywhere, including past u_minus
  CHECK_FALSE(a.lax);      // wait-free check: s above f'(u_minus) = 2
}

TEST_CASE("concave coefficient fails convexity") {
  const auto mdl = FluxModel::polynomial(0.5, -0.2, 0.0, 1.0, 0.75);
  CHECK_FALSE(mdl.check_admissibility().convex);
}

TEST_CASE("flux derivatives are consistent") {
  const auto mdl = FluxModel::polynomial(0.4, 0.05, 0.01, 2.0, 0.8);
  const double u = 1.3;
  const double h = 1e-6;
  const double d1 = (mdl.f(u + h) - mdl.f(u - h)) / (2.0 * h);
  CHECK(mdl.f1(u) == doctest::Approx(d1).epsilon(1e-8));
  const double d2 = (mdl.f1(u + h) - mdl.f1(u - h)) / (2.0 * h);
  CHECK(mdl.f2(u) == doctest::Approx(d2).epsilon(1e-8));
  CHECK(mdl.f3(u) == doctest::Approx(6.0 * 0.05 + 24.0 * 0.01 * u).epsilon(1e-14));
  CHECK(mdl.f4(u) == doctest::Approx(24.0 * 0.01).epsilon(1e-14));
  CHECK(mdl.f(0.0) == 0.0);
  CHECK(mdl.f1(0.0) == 0.0);
}

TEST_CASE("left decay rate is positive for admissible models") {
  const auto mdl = FluxModel::burgers(2.0, 0.75);
  CHECK(mdl.lambda_minus() == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
  CHECK(FluxModel::burgers(1.0, 0.9).lambda_minus() > 0.0);
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(FluxModel::burgers(-1.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(FluxModel::burgers(2.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FluxModel::burgers(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FluxModel::burgers(2.0, 1.2), std::invalid_argument);
  // The diffusion-exponent message cites the admissible range.
  try {
    FluxModel::burgers(2.0, 0.3);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("1/2<m<1") != std::string::npos);
  }
  // Non-finite flux evaluation at u_minus.
  CHECK_THROWS_AS(FluxModel::polynomial(1e308, 1e308, 0.0, 2.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(FluxModel::polynomial(std::nan(""), 0.0, 0.0, 2.0, 0.75), std::invalid_argument);
}
