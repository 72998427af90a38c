#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "numerics.hpp"

using namespace fdshock;

TEST_CASE("fd_weights reproduce classic stencils") {
  const double h = 0.25;
  std::vector<double> fwd = {0.0, h, 2.0 * h};
  auto w = fd_weights(0.0, fwd, 1);
  CHECK(w[0] == doctest::Approx(-1.5 / h).epsilon(1e-13));
  CHECK(w[1] == doctest::Approx(2.0 / h).epsilon(1e-13));
  CHECK(w[2] == doctest::Approx(-0.5 / h).epsilon(1e-13));

  std::vector<double> cen = {-2.0 * h, -h, 0.0, h, 2.0 * h};
  auto w4 = fd_weights(0.0, cen, 1);
  CHECK(w4[0] == doctest::Approx(1.0 / (12.0 * h)).epsilon(1e-13));
  CHECK(w4[1] == doctest::Approx(-8.0 / (12.0 * h)).epsilon(1e-13));
  CHECK(w4[2] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(w4[3] == doctest::Approx(8.0 / (12.0 * h)).epsilon(1e-13));
  CHECK(w4[4] == doctest::Approx(-1.0 / (12.0 * h)).epsilon(1e-13));
}

TEST_CASE("fd_weights second derivative on offset nodes is exact for quadratics") {
  std::vector<double> nodes = {0.0, 0.5, 1.5, 2.5, 3.5};
  auto w = fd_weights(0.0, nodes, 2);
  double acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) acc += w[i] * (3.0 * nodes[i] * nodes[i] - nodes[i] + 2.0);
  CHECK(acc == doctest::Approx(6.0).epsilon(1e-11));
}

TEST_CASE("simpson integrates cubics exactly") {
  auto f = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  CHECK(simpson(f, -1.0, 3.0, 16) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("bisect finds the cosine root") {
  const double r = bisect([](double x) { return std::cos(x); }, 0.0, 3.0, 1e-14, 1e-14);
  CHECK(r == doctest::Approx(std::acos(0.0)).epsilon(1e-12));
}

TEST_CASE("ls_slope recovers an exact line") {
  std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(-2.5 * xi + 0.3);
  CHECK(ls_slope(x, y) == doctest::Approx(-2.5).epsilon(1e-14));
}

TEST_CASE("thomas_solve matches a dense solve") {
  std::vector<double> a = {0.0, 1.0, 2.0};
  std::vector<double> b = {4.0, 5.0, 6.0};
  std::vector<double> c = {1.0, 2.0, 0.0};
  std::vector<double> rhs = {6.0, 17.0, 22.0};
  thomas_solve(a, b, c, rhs);
  // Dense solution of [[4,1,0],[1,5,2],[0,2,6]] x = (6,17,22)
  CHECK(rhs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rhs[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rhs[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("bracket weights: value, symmetry and the one-sided variant") {
  CHECK(bracket_weight(0.0) == 1.0);
  CHECK(bracket_weight(3.0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(bracket_weight(-3.0) == bracket_weight(3.0));
  CHECK(bracket_weight_plus(-7.0) == 1.0);
  CHECK(bracket_weight_plus(0.0) == 1.0);
  CHECK(bracket_weight_plus(1e-12) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bracket_weight_plus(3.0) == bracket_weight(3.0));
}
