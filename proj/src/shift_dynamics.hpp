#pragma once

#include "shock_profile.hpp"

namespace fdshock {

struct Field;

// Scalar state of the boundary-layer shift ODE. speed is carried along so the
// invariant checks do not need the model at every call site.
struct ShiftState {
  double t = 0.0;
  double d = 0.0;
  double d_prime = 0.0;
  double d0 = 0.0;
  double speed = 0.0;

  // Profile argument of the wall trace, z_b = -s t - d.
  double wall_z() const { return -speed * t - d; }
};

ShiftState initial_shift_state(const FluxModel& model, double d0);

// Unique d0 >= 0 with integral of U over [-d0, 0] equal to the initial excess
// mass, located by bisection over composite Simpson quadrature.
double solve_d0(const ProfileTable& profile, double initial_excess_mass);

// Wall mismatch B(t) = u_-^{m-1} u_x(0,t) - U^{m-1} U_z at z = -st-d. The
// one-sided derivative uses the boundary value u_- and the first two cells, in
// difference form so it vanishes exactly on wall-flat data.
double boundary_mismatch(const Field& field, const ProfileTable& profile,
                         const ShiftState& shift, double m);

// d' = (f(u_-) - f(U_b) - B) / U_b with U_b = U(-st-d).
double d_prime_solve(const FluxModel& model, const ProfileTable& profile,
                     const ShiftState& shift, double B);

// Trapezoidal update d += dt (d'_old + d'_new)/2; re-asserts the shift lower
// bound -st/2 - d <= -d0 and aborts with a diagnostic if it fails.
ShiftState advance_shift(const ShiftState& shift, double d_prime_new, double dt);

}  // namespace fdshock
