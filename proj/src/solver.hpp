#pragma once

#include <stdexcept>
#include <vector>

#include "flux_model.hpp"
#include "shift_dynamics.hpp"
#include "shock_profile.hpp"

namespace fdshock {

// Uniform cell-centered grid on [0, L]: x_i = (i + 1/2) dx.
struct Grid1D {
  double L = 0.0;
  int nx = 0;

  Grid1D(double L_, int nx_);
  double dx() const { return L / nx; }
  double x(int i) const { return (i + 0.5) * dx(); }
};

struct Field {
  std::vector<double> u;
  double t = 0.0;
  double dx = 0.0;

  double length() const { return dx * static_cast<double>(u.size()); }
};

struct SolverConfig {
  double dt_max = 0.05;
  double cfl = 0.4;
  double newton_tol = 1e-10;
  int newton_max_iters = 50;
  double floor = 1e-12;
  bool muscl = true;  // minmod reconstruction on the convective flux

  void validate() const;
};

struct BumpSpec {
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
};

// Compactly supported C^2 bump (1 - r^2)^3 on |r| <= 1, r = (x - center)/width.
double bump_shape(double x, const BumpSpec& bump);
double bump_mass(const BumpSpec& bump);

struct InitResult {
  Field field;
  double excess_mass = 0.0;
};

// u0 = U(x - center) + amplitude * bump, with wall-compatibility and
// positivity checks; excess mass from the continuous integral identity.
InitResult init_field(const ProfileTable& profile, const Grid1D& grid, double center,
                      const BumpSpec& bump);

struct StepReport {
  double dt = 0.0;
  int newton_iters = 0;
  int retries = 0;
  double boundary_mass_flux = 0.0;   // net mass through both boundaries this step
  double right_mass_outflux = 0.0;   // mass carried out through x = L this step
  double floored_mass = 0.0;         // mass added by flooring this step
  double sup_err = 0.0;              // filled by the caller after the shift update
};

// Raised by the implicit diffusion solve when Newton stalls above tolerance.
struct NewtonFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Explicit SSP-RK2 convective substep with a local Lax-Friedrichs flux
// (minmod-MUSCL reconstructed when muscl is set). Dirichlet values ul, ur
// enter through reflected ghost cells. Adds the net boundary mass change to
// boundary_mass and the mass exported through the right face to right_outflux.
void convective_substep(Field& field, const FluxModel& model, double dt, double ul,
                        double ur, bool muscl, double& boundary_mass,
                        double& right_outflux);

// Backward Euler step of u_t = (1/m)(u^m)_{xx} by damped Newton on the
// tridiagonal system; returns the iteration count, throws NewtonFailure if the
// residual cannot be brought under cfg.newton_tol. Boundary mass accounting as
// in the convective substep.
int diffusion_substep(Field& field, double m, double dt, double ul, double ur,
                      const SolverConfig& cfg, double& boundary_mass,
                      double& right_outflux);

// One split step: convection(dt/2), diffusion(dt), convection(dt/2) with the
// far-field Dirichlet trace evaluated at the midpoint shift prediction.
// dt_cap additionally bounds the step (to land exactly on t_end).
StepReport step(Field& field, const FluxModel& model, const ProfileTable& profile,
                const ShiftState& shift, const SolverConfig& cfg,
                double dt_cap = 1e300);

double sup_error(const Field& field, const ProfileTable& profile,
                 const ShiftState& shift);
double mass_residual(const Field& field, const ProfileTable& profile,
                     const ShiftState& shift);

}  // namespace fdshock
