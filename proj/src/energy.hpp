#pragma once

#include <array>
#include <vector>

#include "flux_model.hpp"
#include "shift_dynamics.hpp"
#include "shock_profile.hpp"
#include "solver.hpp"

namespace fdshock {

// alpha_1..alpha_6 = (3m-1, 1+m, 3-m, 2m, 2, 4-2m)/(1-m).
std::array<double, 6> compute_alphas(double m);

// Singular profile weights: w1=U^{1-3m}, w2=U^{-(1+m)}, w3=U^{m-3},
// w4=U^{-2m}, w5=U^{-2}, w6=U^{2m-4}, w7=U^{m-1}.
enum class Weight { w1, w2, w3, w4, w5, w6, w7 };
double eval_weight(Weight which, double m, double u);

struct WeightSpec {
  double m = 0.0;
  double beta = 0.0;
  std::array<double, 6> alpha{};
  double xi_star = 0.0;

  double beta_max() const { return (3.0 * m - 1.0) / (1.0 - m); }
  void validate() const;

  // beta at its maximal admissible value (the strongest diagnostic).
  static WeightSpec standard(const FluxModel& model, const ProfileTable& profile);
  static WeightSpec with_beta(const FluxModel& model, const ProfileTable& profile,
                              double beta);
};

struct PerturbationField {
  std::vector<double> phi, phi_x, phi_xx, phi_xxx;
  double dx = 0.0;
  double t = 0.0;
  double phi_xx_wall = 0.0;  // u_x(0) minus the profile slope at the wall
};

// phi(x) = -int_x^inf (u - U(.-st-d)): cumulative trapezoid from the far end,
// phi_x stored as the exact grid difference u - U, higher derivatives by
// fourth-order differencing of phi_x with one-sided closures. phi_right seeds
// the trapezoid with -1 times the perturbation mass beyond x = L (zero when
// the tail there still matches the comparison profile).
PerturbationField compute_phi(const Field& field, const ProfileTable& profile,
                              const ShiftState& shift, double phi_right = 0.0);

// Taylor remainders of the flux and of u^m around the profile value.
// F = -[f(U+p) - f(U) - f'(U)p] via the exact polynomial form; G uses
// expm1/log1p so small increments keep full precision.
double compute_F(const FluxModel& model, double U, double phi_x);
double compute_G(double m, double U, double phi_x);

// Suprema of |F|/phi_x^2 and |G| U^{2-m}/phi_x^2 over cells with
// |phi_x| > 1e-8; NaN ratios when no cell qualifies.
struct RemainderRatios {
  double f_ratio = 0.0;
  double g_ratio = 0.0;
  long samples = 0;
};
RemainderRatios remainder_ratios(const PerturbationField& pert,
                                 const ProfileTable& profile,
                                 const ShiftState& shift);

// sup |phi|/U^m and sup |phi_x|/U, finite because the perturbation decays
// faster than the profile tail.
struct SobolevRatios {
  double phi_over_Um = 0.0;
  double phix_over_U = 0.0;
};
SobolevRatios sobolev_ratios(const PerturbationField& pert,
                             const ProfileTable& profile, const ShiftState& shift);

struct LedgerRow {
  double t = 0.0;
  double phi_w1 = 0.0, phix_w2 = 0.0, phixx_w3 = 0.0;
  double h3b_j0 = 0.0, h3b_j1 = 0.0, h3b_j2 = 0.0, h3b_j3 = 0.0;
  double bdry_beta3 = 0.0;
  double diss_w4 = 0.0, diss_w5 = 0.0, diss_w6 = 0.0, diss_w7 = 0.0;
  double diss_b0 = 0.0, diss_b1 = 0.0, diss_b2 = 0.0, diss_bdry = 0.0;
  double ratio_F = 0.0, ratio_G = 0.0;
  double sob_phi = 0.0, sob_phix = 0.0;
  double n_of_t = 0.0;
};

// Time series of the weighted norms, the running dissipation integrals
// (trapezoid between record times) and the running sup functional N(t).
struct EnergyLedger {
  WeightSpec spec;
  double d0 = 0.0;
  std::vector<LedgerRow> rows;

  bool has_prev = false;
  double prev_t = 0.0;
  std::array<double, 8> prev_integrand{};  // w4, w5, w6, w7, b0, b1, b2, bdry
  std::array<double, 8> accum{};
  double n_sup = 0.0;
};

EnergyLedger make_ledger(const WeightSpec& spec, double d0);

// Appends one row at pert.t; throws if any norm column is non-finite (the
// ratio columns may be NaN when the perturbation vanishes).
void ledger_update(EnergyLedger& ledger, const PerturbationField& pert,
                   const ProfileTable& profile, const ShiftState& shift);

// Column names in row order, shared with the CSV writer.
const std::array<const char*, 22>& ledger_columns();
std::array<double, 22> ledger_row_values(const LedgerRow& row);

}  // namespace fdshock
