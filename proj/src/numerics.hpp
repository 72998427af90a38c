#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fdshock {

// Finite-difference weights for the m-th derivative at x0 on arbitrary nodes
// (Fornberg recursion). Returned vector has one weight per node.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

// Composite Simpson on [a,b] with n panels (n forced even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// Bisection for f(x)=0 on a bracket [lo,hi] with f(lo)*f(hi) <= 0.
// Stops when |f| <= ftol or the bracket shrinks below xtol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double ftol, double xtol);

// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

// Solve tridiagonal system in place (Thomas). a = sub, b = diag, c = super,
// rhs overwritten with the solution. b and rhs are modified.
void thomas_solve(std::vector<double>& a, std::vector<double>& b,
                  std::vector<double>& c, std::vector<double>& rhs);

// <x> = sqrt(1+x^2), and the one-sided variant that is 1 for x <= 0.
double bracket_weight(double x);
double bracket_weight_plus(double x);

}  // namespace fdshock
