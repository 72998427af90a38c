#include "shock_profile.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "numerics.hpp"

namespace fdshock {

namespace {

// Unguarded right-hand side plus its U-derivatives, used for integration and
// for the chained profile derivatives. P(U) = U^{1-m} g(U).
double P0(const FluxModel& mdl, double U) {
  return std::pow(U, 1.0 - mdl.m()) * mdl.g(U);
}

double P1(const FluxModel& mdl, double U) {
  const double m = mdl.m();
  return (1.0 - m) * std::pow(U, -m) * mdl.g(U) +
         std::pow(U, 1.0 - m) * (mdl.f1(U) - mdl.speed());
}

double P2(const FluxModel& mdl, double U) {
  const double m = mdl.m();
  const double gp = mdl.f1(U) - mdl.speed();
  return -m * (1.0 - m) * std::pow(U, -m - 1.0) * mdl.g(U) +
         2.0 * (1.0 - m) * std::pow(U, -m) * gp + std::pow(U, 1.0 - m) * mdl.f2(U);
}

double P3(const FluxModel& mdl, double U) {
  const double m = mdl.m();
  const double gp = mdl.f1(U) - mdl.speed();
  return m * (m + 1.0) * (1.0 - m) * std::pow(U, -m - 2.0) * mdl.g(U) -
         3.0 * m * (1.0 - m) * std::pow(U, -m - 1.0) * gp +
         3.0 * (1.0 - m) * std::pow(U, -m) * mdl.f2(U) + std::pow(U, 1.0 - m) * mdl.f3(U);
}

}  // namespace

double ode_rhs(const FluxModel& model, double U) {
  if (!(U > 0.0) || !(U < model.u_minus()))
    throw std::domain_error("ode_rhs: U must lie strictly between 0 and u_minus");
  return P0(model, U);
}

double profile_Uzz(const FluxModel& model, double U) {
  const double Uz = ode_rhs(model, U);
  return (1.0 - model.m()) * Uz * Uz / U +
         (model.f1(U) - model.speed()) * std::pow(U, 1.0 - model.m()) * Uz;
}

double profile_Uzzz(const FluxModel& model, double U) {
  const double p = ode_rhs(model, U);
  const double p1 = P1(model, U);
  return (P2(model, U) * p + p1 * p1) * p;
}

double profile_Uzzzz(const FluxModel& model, double U) {
  const double p = ode_rhs(model, U);
  const double p1 = P1(model, U);
  const double p2 = P2(model, U);
  return (P3(model, U) * p * p + 4.0 * p2 * p1 * p + p1 * p1 * p1) * p;
}

ProfileTable::ProfileTable(FluxModel model, std::vector<double> z, std::vector<double> u,
                           std::vector<double> slope)
    : model_(std::move(model)), z_(std::move(z)), u_(std::move(u)), slope_(std::move(slope)) {
  if (z_.size() < 2 || z_.size() != u_.size() || z_.size() != slope_.size())
    throw std::invalid_argument("profile table: inconsistent sample arrays");
  fit_tails();
}

void ProfileTable::fit_tails() {
  const double m = model_.m();
  const double cr = (1.0 - m) * (model_.speed() - model_.f1(0.0));
  // Match each closed form exactly at its switchover sample.
  right_z0_ = z_.back() - std::pow(u_.back(), -(1.0 - m)) / cr;
  left_A_ = (model_.u_minus() - u_.front()) * std::exp(-model_.lambda_minus() * z_.front());
}

double ProfileTable::hermite(double z) const {
  const auto it = std::upper_bound(z_.begin(), z_.end(), z);
  size_t i = static_cast<size_t>(it - z_.begin());
  if (i == 0) i = 1;
  if (i >= z_.size()) i = z_.size() - 1;
  const double h = z_[i] - z_[i - 1];
  const double t = (z - z_[i - 1]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * u_[i - 1] + (t3 - 2.0 * t2 + t) * h * slope_[i - 1] +
         (-2.0 * t3 + 3.0 * t2) * u_[i] + (t3 - t2) * h * slope_[i];
}

double ProfileTable::eval_U(double z) const {
  if (z > z_.back()) {
    const double m = model_.m();
    const double cr = (1.0 - m) * (model_.speed() - model_.f1(0.0));
    return std::pow(cr * (z - right_z0_), -1.0 / (1.0 - m));
  }
  if (z < z_.front()) {
    return model_.u_minus() - left_A_ * std::exp(model_.lambda_minus() * z);
  }
  return hermite(z);
}

// Deep in the left tail eval_U saturates to u_minus in double precision (and
// the right tail can underflow to zero); every z-derivative vanishes there
// because g does, so the pointwise formulas are bypassed at the endpoints.
double ProfileTable::eval_Uz(double z) const {
  const double u = eval_U(z);
  if (u >= model_.u_minus() || u <= 0.0) return 0.0;
  return ode_rhs(model_, u);
}

double ProfileTable::eval_Uzz(double z) const {
  const double u = eval_U(z);
  if (u >= model_.u_minus() || u <= 0.0) return 0.0;
  return profile_Uzz(model_, u);
}

double ProfileTable::eval_Uzzz(double z) const {
  const double u = eval_U(z);
  if (u >= model_.u_minus() || u <= 0.0) return 0.0;
  return profile_Uzzz(model_, u);
}

double ProfileTable::eval_Uzzzz(double z) const {
  const double u = eval_U(z);
  if (u >= model_.u_minus() || u <= 0.0) return 0.0;
  return profile_Uzzzz(model_, u);
}

bool ProfileTable::strictly_monotone() const {
  for (size_t i = 1; i < u_.size(); ++i)
    if (!(u_[i] < u_[i - 1]) || !(z_[i] > z_[i - 1])) return false;
  return true;
}

namespace {

using stepper_t = boost::numeric::odeint::runge_kutta_cash_karp54<double>;

struct IntegrationSide {
  std::vector<double> z, u;
};

// March from the anchor to successive stations until past z_bound or until
// crossing u_stop; the final sample is then relocated exactly onto u_stop by
// integrating dz/dU = 1/P(U) over the small overshoot interval.
IntegrationSide integrate_side(const FluxModel& model, double dz_station, double z_bound,
                               double u_stop, bool rightward) {
  const double abs_tol = 1e-12 * model.u_minus();
  auto stepper = boost::numeric::odeint::make_controlled<stepper_t>(abs_tol, 1e-10);
  auto sys = [&model](const double& U, double& dUdz, double) { dUdz = P0(model, U); };

  IntegrationSide out;
  double z = 0.0;
  double u = 0.5 * model.u_minus();
  const double dir = rightward ? 1.0 : -1.0;
  double dt = dir * dz_station * 0.1;

  auto crossed = [&](double val) { return rightward ? val <= u_stop : val >= u_stop; };

  while (dir * z < dir * z_bound - 1e-12) {
    const double target = z + dir * std::min(dz_station, std::abs(z_bound - z));
    while (dir * z < dir * target) {
      if (dir * (z + dt) > dir * target) dt = target - z;
      const auto res = stepper.try_step(sys, u, z, dt);
      if (res == boost::numeric::odeint::fail) {
        if (std::abs(dt) < 1e-14)
          throw std::runtime_error(
              std::string("profile construction: step size underflow on the ") +
              (rightward ? "right" : "left") + " side before the tail switchover");
        continue;
      }
      if (crossed(u)) {
        // Overshot the switchover state inside this step; land on it exactly.
        const double z_event =
            z + simpson([&](double v) { return 1.0 / P0(model, v); }, u, u_stop, 64);
        out.z.push_back(z_event);
        out.u.push_back(u_stop);
        return out;
      }
    }
    z = target;  // snap the station onto its exact abscissa
    out.z.push_back(z);
    out.u.push_back(u);
  }
  return out;
}

}  // namespace

ProfileTable build_profile(const FluxModel& model, double z_min, double z_max, int resolution) {
  if (!(z_min < 0.0 && z_max > 0.0))
    throw std::invalid_argument("build_profile: need z_min < 0 < z_max");
  if (resolution < 100)
    throw std::invalid_argument("build_profile: resolution must be at least 100");

  const double u_minus = model.u_minus();
  const double dz = (z_max - z_min) / resolution;
  const double thr_right = 1e-3 * u_minus;
  const double thr_left = u_minus * (1.0 - 1e-3);

  IntegrationSide right = integrate_side(model, dz, z_max, thr_right, true);
  IntegrationSide left = integrate_side(model, dz, z_min, thr_left, false);

  std::vector<double> z, u, slope;
  z.reserve(left.z.size() + right.z.size() + 1);
  for (size_t i = left.z.size(); i-- > 0;) {
    z.push_back(left.z[i]);
    u.push_back(left.u[i]);
  }
  z.push_back(0.0);
  u.push_back(0.5 * u_minus);
  for (size_t i = 0; i < right.z.size(); ++i) {
    z.push_back(right.z[i]);
    u.push_back(right.u[i]);
  }
  if (z.size() < 8) throw std::runtime_error("build_profile: table degenerate, widen [z_min, z_max]");

  slope.resize(z.size());
  for (size_t i = 0; i < z.size(); ++i) slope[i] = P0(model, u[i]);
  // Shape preservation: cap slopes at 3x the adjacent secants (sufficient
  // condition for a monotone cubic Hermite interpolant). With a resolved
  // table the cap never binds and the exact ODE slopes survive.
  for (size_t i = 0; i < z.size(); ++i) {
    double cap = std::numeric_limits<double>::infinity();
    if (i > 0) cap = std::min(cap, 3.0 * std::abs((u[i] - u[i - 1]) / (z[i] - z[i - 1])));
    if (i + 1 < z.size()) cap = std::min(cap, 3.0 * std::abs((u[i + 1] - u[i]) / (z[i + 1] - z[i])));
    if (std::abs(slope[i]) > cap) slope[i] = std::copysign(cap, slope[i]);
  }

  ProfileTable table(model, std::move(z), std::move(u), std::move(slope));
  if (!table.strictly_monotone())
    throw std::runtime_error("build_profile: tabulated profile is not strictly monotone");

  // The matched tails must join the table continuously.
  const double ur = table.eval_U(table.z_right() + 1e-13);
  const double ul = table.eval_U(table.z_left() - 1e-13);
  if (std::abs(ur - table.u_samples().back()) > 1e-6 * std::abs(table.u_samples().back()) ||
      std::abs(ul - table.u_samples().front()) > 1e-6 * std::abs(table.u_samples().front()))
    throw std::runtime_error("build_profile: tail closed forms do not match the table");
  return table;
}

DerivativeRatios derivative_bound_ratios(const ProfileTable& table) {
  const FluxModel& mdl = table.model();
  const double m = mdl.m();
  DerivativeRatios r;
  for (double U : table.u_samples()) {
    r.r1 = std::max(r.r1, std::abs(ode_rhs(mdl, U)) / std::pow(U, 2.0 - m));
    r.r2 = std::max(r.r2, std::abs(profile_Uzz(mdl, U)) / std::pow(U, 3.0 - 2.0 * m));
    r.r3 = std::max(r.r3, std::abs(profile_Uzzz(mdl, U)) / std::pow(U, 4.0 - 3.0 * m));
    r.r4 = std::max(r.r4, std::abs(profile_Uzzzz(mdl, U)) / std::pow(U, 5.0 - 4.0 * m));
  }
  const double u_min_tab = table.u_samples().back();
  r.r1_right_limit = std::abs(ode_rhs(mdl, u_min_tab)) / std::pow(u_min_tab, 2.0 - m);
  return r;
}

double right_tail_exponent_fit(const ProfileTable& table) {
  const auto& z = table.z_samples();
  const auto& u = table.u_samples();
  const double m = table.model().m();
  const double lo = u.back();
  // For U ~ (c (z - z0))^{-1/(1-m)} the transform U^{m-1} = c (z - z0) is
  // affine in z with slope c = (1-m)(s - f'(0)) regardless of the offset z0,
  // so its regression slope recovers the exponent with only an O(U) flux
  // correction left over. (The tempting U/U_z regression carries a
  // m/(2(1-m)) U bias instead, several percent for m near 1.)
  std::vector<double> zz, w;
  for (size_t i = 0; i < z.size(); ++i) {
    if (u[i] <= 10.0 * lo) {
      zz.push_back(z[i]);
      w.push_back(std::pow(u[i], m - 1.0));
    }
  }
  if (zz.size() < 8) throw std::runtime_error("right tail fit: too few samples in the last decade");
  const double slope = ls_slope(zz, w);
  return (table.model().speed() - table.model().f1(0.0)) / slope;
}

double left_tail_rate_fit(const ProfileTable& table) {
  const auto& z = table.z_samples();
  const auto& u = table.u_samples();
  const double u_minus = table.model().u_minus();
  const double lo = u_minus - u.front();
  std::vector<double> zz, lv;
  for (size_t i = 0; i < z.size(); ++i) {
    const double v = u_minus - u[i];
    if (v > 0.0 && v <= 10.0 * lo && z[i] < 0.0) {
      zz.push_back(z[i]);
      lv.push_back(std::log(v));
    }
  }
  if (zz.size() < 8) throw std::runtime_error("left tail fit: too few samples in the left decade");
  return ls_slope(zz, lv);
}

double find_xi_star(const ProfileTable& table) {
  const FluxModel& mdl = table.model();
  auto h = [&](double xi) { return mdl.f1(table.eval_U(xi)) - mdl.speed(); };
  const double a = table.z_left();
  const double b = table.z_right();
  if (h(a) * h(b) > 0.0)
    throw std::runtime_error("find_xi_star: f'(U) - s does not change sign over the table");
  return bisect(h, a, b, 1e-10, 1e-13);
}

}  // namespace fdshock
