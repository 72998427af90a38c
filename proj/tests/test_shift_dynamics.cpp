#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "flux_model.hpp"
#include "numerics.hpp"
#include "shift_dynamics.hpp"
#include "shock_profile.hpp"
#include "solver.hpp"

using namespace fdshock;

namespace {

const FluxModel& model() {
  static FluxModel m = FluxModel::burgers(2.0, 0.75);
  return m;
}

const ProfileTable& profile() {
  static ProfileTable p = build_profile(model(), -70.0, 190.0, 5200);
  return p;
}

}  // namespace

TEST_CASE("initial shift state carries d0 and the shock speed") {
  ShiftState s = initial_shift_state(model(), 20.0);
  CHECK(s.t == 0.0);
  CHECK(s.d == 20.0);
  CHECK(s.d_prime == 0.0);
  CHECK(s.d0 == 20.0);
  CHECK(s.speed == model().speed());
  CHECK(s.wall_z() == -20.0);
}

TEST_CASE("solve_d0 zero mass and negative mass edge cases") {
  CHECK(solve_d0(profile(), 0.0) == 0.0);
  CHECK_THROWS_AS(solve_d0(profile(), -1.0), std::invalid_argument);
}

TEST_CASE("solve_d0 inverts the translate mass integral") {
  // A pure translate by `center` carries excess mass int_{-center}^0 U, so the
  // bisection must return the center itself.
  const double center = 20.0;
  const double E =
      simpson([&](double z) { return profile().eval_U(z); }, -center, 0.0, 4096);
  const double d0 = solve_d0(profile(), E);
  CHECK(d0 == doctest::Approx(center).epsilon(1e-9));
}

TEST_CASE("solve_d0 satisfies its defining mass identity") {
  for (double E : {5.0, 30.0}) {
    const double d0 = solve_d0(profile(), E);
    const double mass =
        simpson([&](double z) { return profile().eval_U(z); }, -d0, 0.0, 4096);
    CHECK(std::abs(mass - E) <= 1e-9 * (1.0 + E));
    CHECK(d0 > 0.5 * E / model().u_minus());
  }
}

TEST_CASE("boundary mismatch on the synthetic ramp u = u_minus - x") {
  // The one-sided wall derivative is exact on affine data (-1 here), and with
  // the wall trace anchored at z = 0 we have U(0) = 1, U_z(0) = -1/2, so
  // B = 2^{m-1}*(-1) - 1^{m-1}*(-1/2) = 1/2 - 2^{-1/4}.
  Field f;
  f.dx = 0.1;
  f.t = 0.0;
  f.u.resize(32);
  for (size_t i = 0; i < f.u.size(); ++i)
    f.u[i] = 2.0 - (static_cast<double>(i) + 0.5) * f.dx;
  ShiftState s{0.0, 0.0, 0.0, 0.0, model().speed()};
  const double B = boundary_mismatch(f, profile(), s, model().m());
  CHECK(B == doctest::Approx(0.5 - std::pow(2.0, -0.25)).epsilon(1e-13));
}

TEST_CASE("boundary mismatch vanishes identically on flat data") {
  Field f;
  f.dx = 0.05;
  f.t = 0.0;
  f.u.assign(64, 2.0);
  // Wall deep in the left tail, where the profile trace is flat to ~1e-26.
  ShiftState s{0.0, 50.0, 0.0, 50.0, model().speed()};
  const double B = boundary_mismatch(f, profile(), s, model().m());
  CHECK(std::abs(B) <= 1e-20);
}

TEST_CASE("boundary mismatch rejects fields that are too short") {
  Field f;
  f.dx = 0.1;
  f.u.assign(2, 2.0);
  ShiftState s{0.0, 20.0, 0.0, 20.0, model().speed()};
  CHECK_THROWS_AS(boundary_mismatch(f, profile(), s, model().m()),
                  std::invalid_argument);
}

TEST_CASE("d_prime_solve reproduces the flux-balance quotient") {
  // Place the wall where U = 1.9 exactly; with B = 0.05 the balance gives
  // d' = (f(2) - f(1.9) - 0.05)/1.9 = 0.145/1.9.
  const double z_star = bisect(
      [&](double z) { return profile().eval_U(z) - 1.9; }, profile().z_left(), 0.0,
      0.0, 1e-13);
  ShiftState s{0.0, -z_star, 0.0, 20.0, model().speed()};
  const double dp = d_prime_solve(model(), profile(), s, 0.05);
  CHECK(dp == doctest::Approx(0.145 / 1.9).epsilon(1e-10));
}

TEST_CASE("d_prime_solve refuses a vanished wall trace") {
  // Wall pushed absurdly far to the right: the profile trace underflows the
  // guard and the quotient is meaningless.
  ShiftState s{0.0, -1e6, 0.0, 20.0, model().speed()};
  CHECK_THROWS_AS(d_prime_solve(model(), profile(), s, 0.0), std::logic_error);
}

TEST_CASE("advance_shift integrates a constant rate exactly") {
  ShiftState s{0.0, 20.0, 0.1, 20.0, model().speed()};
  ShiftState s2 = advance_shift(s, 0.1, 0.5);
  CHECK(s2.t == 0.5);
  CHECK(s2.d == doctest::Approx(20.05).epsilon(1e-15));
  CHECK(s2.d_prime == 0.1);
  CHECK(s2.d0 == 20.0);
}

TEST_CASE("advance_shift rejects non-positive dt and breached invariants") {
  ShiftState s{0.0, 20.0, 0.0, 20.0, model().speed()};
  CHECK_THROWS_AS(advance_shift(s, 0.0, 0.0), std::invalid_argument);
  // A violently negative rate drags the wall out of the left tail.
  ShiftState bad{0.0, 20.0, -100.0, 20.0, model().speed()};
  CHECK_THROWS_AS(advance_shift(bad, -100.0, 0.1), std::runtime_error);
}
