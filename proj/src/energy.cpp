#include "energy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "numerics.hpp"

namespace fdshock {

std::array<double, 6> compute_alphas(double m) {
  if (!(m > 0.5 && m < 1.0))
    throw std::invalid_argument("diffusion exponent out of range, need 1/2<m<1");
  const double q = 1.0 - m;
  return {(3.0 * m - 1.0) / q, (1.0 + m) / q, (3.0 - m) / q,
          2.0 * m / q,         2.0 / q,       (4.0 - 2.0 * m) / q};
}

double eval_weight(Weight which, double m, double u) {
  if (!(u > 0.0)) throw std::domain_error("weight evaluation needs U > 0");
  double e = 0.0;
  switch (which) {
    case Weight::w1: e = 1.0 - 3.0 * m; break;
    case Weight::w2: e = -(1.0 + m); break;
    case Weight::w3: e = m - 3.0; break;
    case Weight::w4: e = -2.0 * m; break;
    case Weight::w5: e = -2.0; break;
    case Weight::w6: e = 2.0 * m - 4.0; break;
    case Weight::w7: e = m - 1.0; break;
  }
  return std::pow(u, e);
}

void WeightSpec::validate() const {
  if (!(m > 0.5 && m < 1.0))
    throw std::invalid_argument("diffusion exponent out of range, need 1/2<m<1");
  if (!(beta > 0.0 && beta <= beta_max() + 1e-12)) {
    std::ostringstream msg;
    msg << "beta must lie in (0, " << beta_max() << "], got " << beta;
    throw std::invalid_argument(msg.str());
  }
}

WeightSpec WeightSpec::standard(const FluxModel& model, const ProfileTable& profile) {
  WeightSpec s;
  s.m = model.m();
  s.beta = s.beta_max();
  s.alpha = compute_alphas(s.m);
  s.xi_star = find_xi_star(profile);
  s.validate();
  return s;
}

WeightSpec WeightSpec::with_beta(const FluxModel& model, const ProfileTable& profile,
                                 double beta) {
  WeightSpec s = standard(model, profile);
  s.beta = beta;
  s.validate();
  return s;
}

PerturbationField compute_phi(const Field& field, const ProfileTable& profile,
                              const ShiftState& shift, double phi_right) {
  if (std::abs(field.t - shift.t) > 1e-9 * (1.0 + std::abs(field.t)))
    throw std::invalid_argument("field and shift are at different times");
  const size_t n = field.u.size();
  if (n < 6) throw std::invalid_argument("perturbation diagnostics need >= 6 cells");
  const double dx = field.dx;
  const double zw = shift.wall_z();

  PerturbationField out;
  out.dx = dx;
  out.t = field.t;
  out.phi.resize(n);
  out.phi_x.resize(n);
  out.phi_xx.resize(n);
  out.phi_xxx.resize(n);

  for (size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    out.phi_x[i] = field.u[i] - profile.eval_U(x + zw);
  }

  // phi(+inf) = 0; whatever perturbation mass has been carried past x = L is
  // supplied by the caller as phi_right so the wall value closes the
  // conservation identity on the truncated window.
  const std::vector<double>& p = out.phi_x;
  out.phi[n - 1] = phi_right;
  for (size_t i = n - 1; i-- > 0;)
    out.phi[i] = out.phi[i + 1] - 0.5 * dx * (p[i] + p[i + 1]);

  // Fourth-order differencing of phi_x; five-node one-sided closures for the
  // first derivative, six-node for the second.
  const double unit5[5] = {0.0, 1.0, 2.0, 3.0, 4.0};
  const double unit6[6] = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  const auto wd1_0 = fd_weights(0.0, std::span(unit5, 5), 1);
  const auto wd1_1 = fd_weights(1.0, std::span(unit5, 5), 1);
  const auto wd1_3 = fd_weights(3.0, std::span(unit5, 5), 1);
  const auto wd1_4 = fd_weights(4.0, std::span(unit5, 5), 1);
  const auto wd2_0 = fd_weights(0.0, std::span(unit6, 6), 2);
  const auto wd2_1 = fd_weights(1.0, std::span(unit6, 6), 2);
  const auto wd2_4 = fd_weights(4.0, std::span(unit6, 6), 2);
  const auto wd2_5 = fd_weights(5.0, std::span(unit6, 6), 2);

  auto apply = [&](const std::vector<double>& w, size_t base, double scale) {
    double s = 0.0;
    for (size_t j = 0; j < w.size(); ++j) s += w[j] * p[base + j];
    return s * scale;
  };
  const double s1 = 1.0 / dx;
  const double s2 = 1.0 / (dx * dx);
  out.phi_xx[0] = apply(wd1_0, 0, s1);
  out.phi_xx[1] = apply(wd1_1, 0, s1);
  out.phi_xx[n - 2] = apply(wd1_3, n - 5, s1);
  out.phi_xx[n - 1] = apply(wd1_4, n - 5, s1);
  out.phi_xxx[0] = apply(wd2_0, 0, s2);
  out.phi_xxx[1] = apply(wd2_1, 0, s2);
  out.phi_xxx[n - 2] = apply(wd2_4, n - 6, s2);
  out.phi_xxx[n - 1] = apply(wd2_5, n - 6, s2);
  for (size_t i = 2; i + 2 < n; ++i) {
    out.phi_xx[i] =
        (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]) / (12.0 * dx);
    out.phi_xxx[i] = (-p[i - 2] + 16.0 * p[i - 1] - 30.0 * p[i] +
                      16.0 * p[i + 1] - p[i + 2]) /
                     (12.0 * dx * dx);
  }

  // Wall trace of phi_xx = u_x - U_z at x = 0, in difference form so flat
  // data gives an exact zero. Same cell-average gradient stencil as the
  // boundary-mismatch trace and the diffusion boundary rows, so the three
  // wall diagnostics see one and the same discrete derivative.
  const double um = profile.model().u_minus();
  const double ux0 =
      3.5 / dx * (field.u[0] - um) - 0.5 / dx * (field.u[1] - um);
  out.phi_xx_wall = ux0 - profile.eval_Uz(zw);
  return out;
}

double compute_F(const FluxModel& model, double U, double phi_x) {
  if (!(U > 0.0)) throw std::domain_error("F remainder needs U > 0");
  const auto& c = model.coeffs();
  const double p = phi_x;
  return -(p * p) *
         (c[0] + c[1] * (3.0 * U + p) +
          c[2] * (6.0 * U * U + 4.0 * U * p + p * p));
}

double compute_G(double m, double U, double phi_x) {
  if (!(U > 0.0)) throw std::domain_error("G remainder needs U > 0");
  const double r = phi_x / U;
  if (!(1.0 + r > 0.0))
    throw std::domain_error("G remainder needs U + phi_x > 0");
  return std::pow(U, m) * (std::expm1(m * std::log1p(r)) - m * r);
}

RemainderRatios remainder_ratios(const PerturbationField& pert,
                                 const ProfileTable& profile,
                                 const ShiftState& shift) {
  RemainderRatios out;
  out.f_ratio = std::numeric_limits<double>::quiet_NaN();
  out.g_ratio = std::numeric_limits<double>::quiet_NaN();
  const FluxModel& model = profile.model();
  const double zw = shift.wall_z();
  double rf = 0.0, rg = 0.0;
  for (size_t i = 0; i < pert.phi_x.size(); ++i) {
    const double p = pert.phi_x[i];
    if (std::abs(p) <= 1e-8) continue;
    const double x = (static_cast<double>(i) + 0.5) * pert.dx;
    const double U = profile.eval_U(x + zw);
    const double p2 = p * p;
    rf = std::max(rf, std::abs(compute_F(model, U, p)) / p2);
    rg = std::max(rg, std::abs(compute_G(model.m(), U, p)) *
                          std::pow(U, 2.0 - model.m()) / p2);
    ++out.samples;
  }
  if (out.samples > 0) {
    out.f_ratio = rf;
    out.g_ratio = rg;
  }
  return out;
}

SobolevRatios sobolev_ratios(const PerturbationField& pert,
                             const ProfileTable& profile,
                             const ShiftState& shift) {
  SobolevRatios out;
  const double m = profile.model().m();
  const double zw = shift.wall_z();
  for (size_t i = 0; i < pert.phi_x.size(); ++i) {
    const double x = (static_cast<double>(i) + 0.5) * pert.dx;
    const double U = profile.eval_U(x + zw);
    out.phi_over_Um = std::max(out.phi_over_Um,
                               std::abs(pert.phi[i]) / std::pow(U, m));
    out.phix_over_U = std::max(out.phix_over_U, std::abs(pert.phi_x[i]) / U);
  }
  return out;
}

EnergyLedger make_ledger(const WeightSpec& spec, double d0) {
  spec.validate();
  if (!(d0 > 0.0)) throw std::invalid_argument("ledger needs d0 > 0");
  EnergyLedger led;
  led.spec = spec;
  led.d0 = d0;
  return led;
}

const std::array<const char*, 22>& ledger_columns() {
  static const std::array<const char*, 22> names = {
      "t",       "phi_w1",  "phix_w2", "phixx_w3", "h3b_j0",  "h3b_j1",
      "h3b_j2",  "h3b_j3",  "bdry_beta3", "diss_w4", "diss_w5", "diss_w6",
      "diss_w7", "diss_b0", "diss_b1", "diss_b2",  "diss_bdry", "ratio_F",
      "ratio_G", "sob_phi", "sob_phix", "n_of_t"};
  return names;
}

std::array<double, 22> ledger_row_values(const LedgerRow& r) {
  return {r.t,       r.phi_w1,  r.phix_w2, r.phixx_w3, r.h3b_j0,  r.h3b_j1,
          r.h3b_j2,  r.h3b_j3,  r.bdry_beta3, r.diss_w4, r.diss_w5, r.diss_w6,
          r.diss_w7, r.diss_b0, r.diss_b1, r.diss_b2,  r.diss_bdry, r.ratio_F,
          r.ratio_G, r.sob_phi, r.sob_phix, r.n_of_t};
}

void ledger_update(EnergyLedger& ledger, const PerturbationField& pert,
                   const ProfileTable& profile, const ShiftState& shift) {
  const size_t n = pert.phi_x.size();
  const double dx = pert.dx;
  const double m = ledger.spec.m;
  const double beta = ledger.spec.beta;
  const double xis = ledger.spec.xi_star;
  const double zw = shift.wall_z();

  LedgerRow row;
  row.t = pert.t;
  for (size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    const double xi = x + zw;
    const double U = profile.eval_U(xi);
    const double br = bracket_weight(xi - xis);
    const double ph = pert.phi[i];
    const double px = pert.phi_x[i];
    const double pxx = pert.phi_xx[i];
    const double pxxx = pert.phi_xxx[i];

    row.phi_w1 += eval_weight(Weight::w1, m, U) * ph * ph;
    row.phix_w2 += eval_weight(Weight::w2, m, U) * px * px;
    row.phixx_w3 += eval_weight(Weight::w3, m, U) * pxx * pxx;
    row.h3b_j0 += std::pow(br, beta) * ph * ph;
    row.h3b_j1 += std::pow(br, beta + 1.0) * px * px;
    row.h3b_j2 += std::pow(br, beta + 2.0) * pxx * pxx;
    row.h3b_j3 += std::pow(br, beta + 3.0) * pxxx * pxxx;
    row.diss_w4 += eval_weight(Weight::w4, m, U) * px * px;
    row.diss_w5 += eval_weight(Weight::w5, m, U) * pxx * pxx;
    row.diss_w6 += eval_weight(Weight::w6, m, U) * pxxx * pxxx;
    row.diss_w7 += eval_weight(Weight::w7, m, U) * px * px;
    row.diss_b0 += std::pow(br, beta) * px * px;
    row.diss_b1 += std::pow(br, beta + 1.0) * pxx * pxx;
    row.diss_b2 += std::pow(br, beta + 2.0) * pxxx * pxxx;
  }
  row.phi_w1 *= dx;
  row.phix_w2 *= dx;
  row.phixx_w3 *= dx;
  row.h3b_j0 *= dx;
  row.h3b_j1 *= dx;
  row.h3b_j2 *= dx;
  row.h3b_j3 *= dx;
  const double wall2 = pert.phi_xx_wall * pert.phi_xx_wall;
  row.bdry_beta3 = std::pow(ledger.d0 + pert.t, beta + 3.0) * wall2;

  // The diss_* fields held instantaneous integrands so far; fold them into
  // the running trapezoid integrals.
  std::array<double, 8> inst = {row.diss_w4 * dx, row.diss_w5 * dx,
                                row.diss_w6 * dx, row.diss_w7 * dx,
                                row.diss_b0 * dx, row.diss_b1 * dx,
                                row.diss_b2 * dx, row.bdry_beta3};
  if (ledger.has_prev) {
    const double dt = pert.t - ledger.prev_t;
    if (dt < 0.0) throw std::invalid_argument("ledger updates must advance in time");
    for (size_t k = 0; k < inst.size(); ++k)
      ledger.accum[k] += 0.5 * dt * (ledger.prev_integrand[k] + inst[k]);
  }
  ledger.prev_integrand = inst;
  ledger.prev_t = pert.t;
  ledger.has_prev = true;
  row.diss_w4 = ledger.accum[0];
  row.diss_w5 = ledger.accum[1];
  row.diss_w6 = ledger.accum[2];
  row.diss_w7 = ledger.accum[3];
  row.diss_b0 = ledger.accum[4];
  row.diss_b1 = ledger.accum[5];
  row.diss_b2 = ledger.accum[6];
  row.diss_bdry = ledger.accum[7];

  const RemainderRatios rr = remainder_ratios(pert, profile, shift);
  row.ratio_F = rr.f_ratio;
  row.ratio_G = rr.g_ratio;
  const SobolevRatios sr = sobolev_ratios(pert, profile, shift);
  row.sob_phi = sr.phi_over_Um;
  row.sob_phix = sr.phix_over_U;

  const double n_inst = std::sqrt(row.phi_w1) + std::sqrt(row.phix_w2) +
                        std::sqrt(row.phixx_w3) +
                        std::sqrt(row.h3b_j0 + row.h3b_j1 + row.h3b_j2 + row.h3b_j3) +
                        std::sqrt(row.bdry_beta3) + std::sqrt(row.diss_bdry);
  ledger.n_sup = std::max(ledger.n_sup, n_inst);
  row.n_of_t = ledger.n_sup;

  const auto vals = ledger_row_values(row);
  const auto& names = ledger_columns();
  for (size_t k = 0; k < vals.size(); ++k) {
    if (names[k] == std::string("ratio_F") || names[k] == std::string("ratio_G"))
      continue;  // NaN allowed when the perturbation vanished
    if (!std::isfinite(vals[k])) {
      std::ostringstream msg;
      msg << "non-finite ledger entry: " << names[k] << " at t = " << pert.t;
      throw std::runtime_error(msg.str());
    }
  }
  ledger.rows.push_back(row);
}

}  // namespace fdshock
