#pragma once

#include <array>
#include <string>

namespace fdshock {

// Admissibility report for the planned shock connecting u_minus to 0.
// Lax and the pointwise chord condition are checked independently; callers
// see both flags rather than an assumed equivalence.
struct Admissibility {
  bool lax = false;      // f'(0) < s < f'(u_minus)
  bool entropy = false;  // g(u) = f(u) - s*u < 0 strictly inside (0, u_minus)
  bool convex = false;   // f'' > 0 sampled on [0, u_minus]
  bool all() const { return lax && entropy && convex; }
};

// Convex polynomial flux f(u) = c2 u^2 + c3 u^3 + c4 u^4 (f(0) = f'(0) - c1 = 0
// by construction) together with the left state, the diffusion exponent m and
// the Rankine-Hugoniot speed of the u_minus -> 0 shock.
class FluxModel {
 public:
  enum class Kind { Burgers, Polynomial };

  static FluxModel burgers(double u_minus, double m);
  static FluxModel polynomial(double c2, double c3, double c4, double u_minus, double m);

  Kind kind() const { return kind_; }
  double u_minus() const { return u_minus_; }
  double m() const { return m_; }
  double speed() const { return s_; }
  double lambda_minus() const { return lambda_minus_; }
  const std::array<double, 3>& coeffs() const { return c_; }

  double f(double u) const;
  double f1(double u) const;
  double f2(double u) const;
  double f3(double u) const;
  double f4(double u) const;

  // g(u) = f(u) - s*u. Vanishes exactly at u = 0 and u = u_minus.
  double g(double u) const;

  Admissibility check_admissibility() const;

  // Diagnostic copy with the shock speed replaced (e.g. to probe how the
  // admissibility checks reject a non-Rankine-Hugoniot speed).
  FluxModel with_shock_speed(double s) const;

 private:
  FluxModel(Kind kind, std::array<double, 3> c, double u_minus, double m);

  Kind kind_;
  std::array<double, 3> c_;  // c2, c3, c4
  double u_minus_;
  double m_;
  double s_;
  double lambda_minus_;
};

}  // namespace fdshock
