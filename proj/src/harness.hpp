#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "energy.hpp"
#include "shift_dynamics.hpp"
#include "shock_profile.hpp"
#include "solver.hpp"

namespace fdshock {

// One recorded instant of the outer run loop (a timeseries.csv row).
// floored_mass is cumulative over the run; newton_iters is the largest
// iteration count of any step since the previous record.
struct TimePoint {
  double t = 0.0;
  double d = 0.0;
  double dprime = 0.0;
  double Ub = 0.0;
  double B = 0.0;
  double sup_err = 0.0;
  double mass_residual = 0.0;
  double phi_wall = 0.0;       // phi(0, t) = -mass residual up to rounding
  double floored_mass = 0.0;
  int newton_iters = 0;
  double int_abs_dprime = 0.0; // running integral of |d'|
};

struct SimulationArtifacts {
  RunConfig config;
  double d0 = 0.0;
  double excess_mass = 0.0;
  long steps = 0;

  std::vector<TimePoint> series;
  EnergyLedger ledger;
  std::vector<std::pair<Field, ShiftState>> snapshots;
  Field final_field;
  ShiftState final_shift;

  // Run-wide monitors. The shift gap is -st/2 - d + d0, which the dynamics
  // keep nonpositive; its maximum over all steps certifies zero violations.
  double min_u = 0.0, max_u = 0.0;
  double floored_total = 0.0;
  double right_outflux_total = 0.0;  // mass exported through x = L over the run
  double export_gap_final = 0.0;     // export minus the comparison profile's own
  double shift_gap_max = 0.0;
  double f_ratio_sup = 0.0;
  // |G| U^{2-m} / phi_x^2 restricted to cells with |phi_x| <= 0.01 U, where
  // the quadratic Taylor remainder dominates; NaN when no cell ever qualifies.
  double g_ratio_small_sup = 0.0;
  long g_small_samples = 0;
  SobolevRatios sobolev_initial;
  SobolevRatios sobolev_sup;
};

ProfileTable make_profile(const RunConfig& rc);

// Marches the split-step solver coupled to the shift ODE from t = 0 to
// run.t_end, recording every record_every-th step plus every snapshot time
// and the final instant. d'(0) comes from the initial boundary balance.
SimulationArtifacts run_simulation(const RunConfig& rc, const ProfileTable& profile);

// timeseries.csv, ledger.csv, snapshot_<t>.csv per snapshot, run_summary.json.
void write_simulation_outputs(const SimulationArtifacts& art,
                              const ProfileTable& profile,
                              const std::string& out_dir);

// profile.csv (z, U, Uz, Uzz) and profile_summary.json with the tail fits
// and derivative-bound ratios.
void write_profile_outputs(const RunConfig& rc, const ProfileTable& profile,
                           const std::string& out_dir);

struct RefinementLevel {
  int nx = 0;
  double dx = 0.0;
  double sup_err_final = 0.0;
  double mass_residual_max = 0.0;
};

struct RefinementStudy {
  std::vector<RefinementLevel> levels;
  double order = 0.0;   // least-squares slope of log(sup_err) vs log(dx)
  bool monotone = false;
};

// Reruns the configuration at each nx; with a zero bump the exact solution is
// the translated profile, so the final sup_err is a pure discretization error
// and its decay rate estimates the scheme order.
RefinementStudy grid_refinement_study(const RunConfig& base,
                                      const std::vector<int>& nx_levels);

struct SweepPoint {
  double m = 0.0;
  double center = 0.0;
  bool ok = false;
  std::string error;
  double d0 = 0.0;
  double final_sup_err = 0.0;
  double d_inf_est = 0.0;
  double tail_exponent = 0.0;
  double tail_exponent_target = 0.0;
  double left_rate = 0.0;
  double left_rate_target = 0.0;
};

// Cartesian sweep over sweep.m_values x sweep.centers; points run
// concurrently, each writing a full simulation artifact set into its own
// subdirectory of out_dir. A failing point records its error text and the
// sweep continues.
std::vector<SweepPoint> run_sweep(const RunConfig& base, const std::string& out_dir);

void write_sweep_csv(const std::vector<SweepPoint>& points,
                     const std::string& out_dir);

}  // namespace fdshock
