#pragma once

#include <vector>

#include "flux_model.hpp"

namespace fdshock {

// dU/dz = U^{1-m} g(U) for the traveling-wave profile. Domain is the open
// interval (0, u_minus); both endpoints are equilibria of the ODE.
double ode_rhs(const FluxModel& model, double U);

// Derivatives of the profile as closed functions of U, obtained by chaining
// the ODE right-hand side (no finite differencing anywhere).
double profile_Uzz(const FluxModel& model, double U);
double profile_Uzzz(const FluxModel& model, double U);
double profile_Uzzzz(const FluxModel& model, double U);

struct DerivativeRatios {
  double r1 = 0.0;  // sup |U_z|    / U^{2-m}
  double r2 = 0.0;  // sup |U_zz|   / U^{3-2m}
  double r3 = 0.0;  // sup |U_zzz|  / U^{4-3m}
  double r4 = 0.0;  // sup |U_zzzz| / U^{5-4m}
  double r1_right_limit = 0.0;  // |U_z|/U^{2-m} at the smallest tabulated U
};

// Monotone tabulation of the profile anchored at U(0) = u_minus/2, plus the
// closed-form tails used beyond the switchover points.
class ProfileTable {
 public:
  // Raw constructor; performs no validation (build_profile is the checked
  // path, this one exists for diagnostics and fault-injection tests).
  ProfileTable(FluxModel model, std::vector<double> z, std::vector<double> u,
               std::vector<double> slope);

  const FluxModel& model() const { return model_; }
  const std::vector<double>& z_samples() const { return z_; }
  const std::vector<double>& u_samples() const { return u_; }
  double z_left() const { return z_.front(); }
  double z_right() const { return z_.back(); }
  double lambda_minus() const { return model_.lambda_minus(); }
  double right_tail_z0() const { return right_z0_; }
  double left_tail_amplitude() const { return left_A_; }

  double eval_U(double z) const;
  double eval_Uz(double z) const;    // = ode_rhs(eval_U(z))
  double eval_Uzz(double z) const;   // (1-m) U_z^2/U + (f'(U)-s) U^{1-m} U_z
  double eval_Uzzz(double z) const;
  double eval_Uzzzz(double z) const;

  bool strictly_monotone() const;

 private:
  double hermite(double z) const;
  void fit_tails();

  FluxModel model_;
  std::vector<double> z_, u_, slope_;
  double right_z0_ = 0.0;
  double left_A_ = 0.0;
};

// Integrate the profile ODE from the anchor with an adaptive embedded
// Runge-Kutta pair (relative tolerance 1e-10), tabulating at uniform stations
// of spacing (z_max - z_min)/resolution until either bound or until the
// solution is within relative distance 1e-3 of an endpoint state, where the
// matched closed-form tail takes over.
ProfileTable build_profile(const FluxModel& model, double z_min, double z_max,
                           int resolution);

DerivativeRatios derivative_bound_ratios(const ProfileTable& table);

// Algebraic decay exponent fitted over the last tabulated decade of U
// (expected near 1/(1-m)) and semilog rate of u_minus - U over the left
// decade (expected near lambda_minus).
double right_tail_exponent_fit(const ProfileTable& table);
double left_tail_rate_fit(const ProfileTable& table);

// Unique root of f'(U(xi)) = s, located by bisection to |f'(U)-s| <= 1e-10.
double find_xi_star(const ProfileTable& table);

}  // namespace fdshock
