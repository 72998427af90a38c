#include "flux_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdshock {

FluxModel FluxModel::burgers(double u_minus, double m) {
  return FluxModel(Kind::Burgers, {0.5, 0.0, 0.0}, u_minus, m);
}

FluxModel FluxModel::polynomial(double c2, double c3, double c4, double u_minus, double m) {
  return FluxModel(Kind::Polynomial, {c2, c3, c4}, u_minus, m);
}

FluxModel::FluxModel(Kind kind, std::array<double, 3> c, double u_minus, double m)
    : kind_(kind), c_(c), u_minus_(u_minus), m_(m) {
  for (double ck : c_)
    if (!std::isfinite(ck)) throw std::invalid_argument("flux coefficients must be finite");
  if (!(u_minus > 0.0) || !std::isfinite(u_minus))
    throw std::invalid_argument("u_minus must be positive and finite");
  if (!(m > 0.5 && m < 1.0))
    throw std::invalid_argument("diffusion exponent out of range, need 1/2<m<1");
  const double fu = f(u_minus);
  if (!std::isfinite(fu))
    throw std::invalid_argument("flux evaluation at u_minus is not finite");
  s_ = fu / u_minus;  // Rankine-Hugoniot with the zero right state, f(0) = 0
  if (!std::isfinite(s_) || s_ <= 0.0)
    throw std::invalid_argument("shock speed must be positive and finite");
  lambda_minus_ = std::pow(u_minus_, 1.0 - m_) * (f1(u_minus_) - s_);
}

double FluxModel::f(double u) const { return u * u * (c_[0] + u * (c_[1] + u * c_[2])); }

double FluxModel::f1(double u) const {
  return u * (2.0 * c_[0] + u * (3.0 * c_[1] + u * 4.0 * c_[2]));
}

double FluxModel::f2(double u) const {
  return 2.0 * c_[0] + u * (6.0 * c_[1] + u * 12.0 * c_[2]);
}

double FluxModel::f3(double u) const { return 6.0 * c_[1] + u * 24.0 * c_[2]; }

double FluxModel::f4(double u) const { return 24.0 * c_[2]; }

double FluxModel::g(double u) const { return f(u) - s_ * u; }

Admissibility FluxModel::check_admissibility() const {
  Admissibility a;
  a.lax = f1(0.0) < s_ && s_ < f1(u_minus_);
  // Chord condition: g vanishes at both shock states and is strictly negative
  // inside. The interior is sampled with a safety margin at both ends.
  const int n = 10000;
  const double delta = u_minus_ / n;
  const double scale = std::max(1.0, std::abs(f(u_minus_)));
  a.entropy = std::abs(g(0.0)) <= 1e-12 * scale && std::abs(g(u_minus_)) <= 1e-12 * scale;
  a.convex = true;
  for (int i = 0; i <= n; ++i) {
    const double u = delta + (u_minus_ - 2.0 * delta) * i / n;
    if (!(g(u) < 0.0)) a.entropy = false;
    const double ucvx = u_minus_ * i / n;
    if (!(f2(ucvx) > 0.0)) a.convex = false;
  }
  return a;
}

FluxModel FluxModel::with_shock_speed(double s) const {
  FluxModel copy = *this;
  if (!std::isfinite(s)) throw std::invalid_argument("shock speed override must be finite");
  copy.s_ = s;
  copy.lambda_minus_ = std::pow(u_minus_, 1.0 - m_) * (f1(u_minus_) - s);
  return copy;
}

}  // namespace fdshock
