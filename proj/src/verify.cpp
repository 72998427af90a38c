#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "csv.hpp"
#include "energy.hpp"
#include "harness.hpp"
#include "numerics.hpp"

namespace fdshock {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

const TimePoint& row_nearest(const std::vector<TimePoint>& series, double t) {
  const TimePoint* best = &series.front();
  for (const TimePoint& p : series)
    if (std::abs(p.t - t) < std::abs(best->t - t)) best = &p;
  return *best;
}

}  // namespace

double profile_ode_residual(const ProfileTable& table) {
  const auto& z = table.z_samples();
  const auto& u = table.u_samples();
  if (u.size() < 7)
    throw std::invalid_argument("profile table too short for the residual stencil");
  const FluxModel& model = table.model();
  double slope_max = 0.0;
  for (double ui : u)
    slope_max = std::max(slope_max, std::abs(std::pow(ui, 1.0 - model.m()) * model.g(ui)));
  // The end samples sit exactly on the tail switchover states rather than on
  // grid stations, so the weights must come from the actual node offsets of
  // each window instead of a single uniform spacing.
  std::vector<double> nodes(7);
  double worst = 0.0;
  for (size_t i = 3; i + 3 < u.size(); ++i) {
    for (int k = 0; k < 7; ++k) nodes[k] = z[i - 3 + k] - z[i];
    const auto w = fd_weights(0.0, nodes, 1);
    double du = 0.0;
    for (int k = 0; k < 7; ++k) du += w[k] * u[i - 3 + k];
    const double rhs = std::pow(u[i], 1.0 - model.m()) * model.g(u[i]);
    worst = std::max(worst, std::abs(du - rhs));
  }
  return worst / slope_max;
}

std::vector<CriterionResult> run_verification(const RunConfig& base,
                                              const VerifyOptions& opts) {
  const double ts = opts.tolerance_scale;
  if (!(ts > 0.0) || !std::isfinite(ts))
    throw std::invalid_argument("tolerance scale must be positive and finite");

  std::vector<CriterionResult> results;
  auto add = [&](int id, const char* name, bool pass, double measured,
                 double required, std::string detail) {
    results.push_back({id, name, pass, measured, required, std::move(detail)});
  };
  // Runs one criterion body, converting a thrown error into a failure line.
  auto guarded = [&](int id, const char* name, auto body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(id, name, false, kNaN, kNaN, e.what());
    }
  };

  std::optional<ProfileTable> profile;
  std::string profile_error;
  try {
    profile.emplace(make_profile(base));
  } catch (const std::exception& e) {
    profile_error = fmt("profile build failed: %s", e.what());
  }
  auto need_profile = [&]() -> const ProfileTable& {
    if (!profile) throw std::runtime_error(profile_error);
    return *profile;
  };

  guarded(1, "profile monotone, ODE residual", [&] {
    const ProfileTable& p = need_profile();
    const double measured = profile_ode_residual(p);
    const bool mono = p.strictly_monotone();
    add(1, "profile monotone, ODE residual", mono && measured <= 1e-8 * ts,
        measured, 1e-8 * ts,
        fmt("monotone=%s over %zu nodes", mono ? "yes" : "NO",
            p.u_samples().size()));
  });

  guarded(2, "right-tail exponent 1/(1-m)", [&] {
    const ProfileTable& p = need_profile();
    double worst = std::abs(right_tail_exponent_fit(p) * (1.0 - base.m) - 1.0);
    std::string detail = fmt("m=%g fit=%.4f", base.m, right_tail_exponent_fit(p));
    for (double m : base.sweep_m_values) {
      RunConfig rc = base;
      rc.m = m;
      const ProfileTable q = make_profile(rc);
      const double fit = right_tail_exponent_fit(q);
      worst = std::max(worst, std::abs(fit * (1.0 - m) - 1.0));
      detail += fmt(" | m=%g fit=%.4f", m, fit);
    }
    add(2, "right-tail exponent 1/(1-m)", worst <= 0.02 * ts, worst, 0.02 * ts,
        detail);
  });

  guarded(3, "left-tail rate lambda_minus", [&] {
    const ProfileTable& p = need_profile();
    const double rate = left_tail_rate_fit(p);
    const double measured = std::abs(rate / p.lambda_minus() - 1.0);
    add(3, "left-tail rate lambda_minus", measured <= 0.02 * ts, measured,
        0.02 * ts, fmt("fit=%.8f target=%.8f", rate, p.lambda_minus()));
  });

  guarded(4, "derivative-bound ratios r1-r4", [&] {
    const ProfileTable& p = need_profile();
    const DerivativeRatios r = derivative_bound_ratios(p);
    const bool finite = std::isfinite(r.r1) && std::isfinite(r.r2) &&
                        std::isfinite(r.r3) && std::isfinite(r.r4);
    const double target = p.model().speed() - p.model().f1(0.0);
    const double measured = std::abs(r.r1_right_limit / target - 1.0);
    add(4, "derivative-bound ratios r1-r4", finite && measured <= 0.02 * ts,
        measured, 0.02 * ts,
        fmt("r=(%.4f, %.4f, %.4f, %.4f) limit=%.6f target=%.6f", r.r1, r.r2,
            r.r3, r.r4, r.r1_right_limit, target));
  });

  // Criteria 5-11 share one coupled run. A perturbation is required for the
  // decay and remainder checks, so a configuration without one gets the
  // standard test bump.
  RunConfig bump_cfg = base;
  if (bump_cfg.bump.amplitude == 0.0) bump_cfg.bump = BumpSpec{0.05, 10.0, 2.0};
  std::optional<SimulationArtifacts> run;
  std::string run_error = profile_error;
  if (profile) {
    try {
      run.emplace(run_simulation(bump_cfg, *profile));
    } catch (const std::exception& e) {
      run_error = fmt("baseline run failed: %s", e.what());
    }
  }
  auto need_run = [&]() -> const SimulationArtifacts& {
    if (!run) throw std::runtime_error(run_error);
    return *run;
  };

  guarded(5, "mass identity, refinement", [&] {
    const SimulationArtifacts& art = need_run();
    double coarse = 0.0;
    for (const TimePoint& p : art.series)
      coarse = std::max(coarse, std::abs(p.mass_residual));
    RunConfig fine_cfg = bump_cfg;
    fine_cfg.nx *= 2;
    const SimulationArtifacts fine_art = run_simulation(fine_cfg, *profile);
    double fine = 0.0;
    for (const TimePoint& p : fine_art.series)
      fine = std::max(fine, std::abs(p.mass_residual));
    const double bound = 1e-3 * base.u_minus * ts;
    const double ratio = coarse / fine;
    add(5, "mass identity, refinement",
        coarse <= bound && ratio >= 3.0 / ts, coarse, bound,
        fmt("refined max=%.3e ratio=%.2f (need >= %.2f)", fine, ratio, 3.0 / ts));
  });

  guarded(6, "shift lower bound", [&] {
    const SimulationArtifacts& art = need_run();
    add(6, "shift lower bound", art.shift_gap_max <= 0.0, art.shift_gap_max,
        0.0, fmt("max over %ld steps of -st/2-d+d0", art.steps));
  });

  guarded(7, "shift convergence", [&] {
    const SimulationArtifacts& art = need_run();
    const TimePoint& mid = row_nearest(art.series, base.t_end / 2.0);
    const TimePoint& end = art.series.back();
    const double dd = std::abs(end.d - mid.d);
    const double total = end.int_abs_dprime;
    const double incr = end.int_abs_dprime - mid.int_abs_dprime;
    const bool cauchy = total == 0.0 || incr <= 0.05 * ts * total;
    add(7, "shift convergence", dd <= 1e-3 * ts && cauchy, dd, 1e-3 * ts,
        fmt("|d(%g)-d(%g)|; int|d'| tail/total=%.3e/%.3e", end.t, mid.t, incr,
            total));
  });

  guarded(8, "sup-norm decay", [&] {
    const SimulationArtifacts& art = need_run();
    double peak = 0.0;
    for (const TimePoint& p : art.series) peak = std::max(peak, p.sup_err);
    const double final_err = art.series.back().sup_err;
    const double ratio = peak / final_err;
    add(8, "sup-norm decay", ratio >= 10.0 / ts, ratio, 10.0 / ts,
        fmt("peak=%.3e final=%.3e", peak, final_err));
  });

  guarded(9, "flux/diffusion remainders", [&] {
    const SimulationArtifacts& art = need_run();
    const bool quadratic = base.model_kind == "burgers";
    const double f_dev = std::abs(art.f_ratio_sup - 0.5);
    const bool f_ok = quadratic ? f_dev <= 1e-12 * ts
                                : std::isfinite(art.f_ratio_sup);
    const double g_target = 0.5 * base.m * (1.0 - base.m);
    const double g_dev = std::abs(art.g_ratio_small_sup / g_target - 1.0);
    const bool g_ok = art.g_small_samples > 0 &&
                      std::isfinite(art.g_ratio_small_sup) && g_dev <= 0.25 * ts;
    add(9, "flux/diffusion remainders", f_ok && g_ok, f_dev, 1e-12 * ts,
        fmt("|F|/p^2 sup=%.17g; |G|U^(2-m)/p^2 sup=%.6f target=%.6f dev=%.3f "
            "(%ld samples)",
            art.f_ratio_sup, art.g_ratio_small_sup, g_target, g_dev,
            art.g_small_samples));
  });

  guarded(10, "Sobolev ratios bounded", [&] {
    const SimulationArtifacts& art = need_run();
    auto ratio = [](double sup, double initial) {
      if (initial == 0.0) return sup == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
      return sup / initial;
    };
    const double r1 = ratio(art.sobolev_sup.phi_over_Um, art.sobolev_initial.phi_over_Um);
    const double r2 = ratio(art.sobolev_sup.phix_over_U, art.sobolev_initial.phix_over_U);
    const double measured = std::max(r1, r2);
    add(10, "Sobolev ratios bounded", measured <= 3.0 * ts, measured, 3.0 * ts,
        fmt("|phi|/U^m x%.3f, |phi_x|/U x%.3f", r1, r2));
  });

  guarded(11, "energy ledger bounded, dissipation", [&] {
    const SimulationArtifacts& art = need_run();
    const auto& rows = art.ledger.rows;
    const LedgerRow& r0 = rows.front();

    double worst_ratio = 0.0;
    const char* worst_norm = "";
    auto family = [&](double LedgerRow::* mem, const char* name) {
      const double denom = r0.*mem;
      for (const LedgerRow& r : rows) {
        const double v = r.*mem;
        const double q = denom > 0.0
                             ? v / denom
                             : (v > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        if (q > worst_ratio) {
          worst_ratio = q;
          worst_norm = name;
        }
      }
    };
    family(&LedgerRow::phi_w1, "phi_w1");
    family(&LedgerRow::phix_w2, "phix_w2");
    family(&LedgerRow::phixx_w3, "phixx_w3");
    family(&LedgerRow::h3b_j0, "h3b_j0");
    family(&LedgerRow::h3b_j1, "h3b_j1");
    family(&LedgerRow::h3b_j2, "h3b_j2");
    family(&LedgerRow::h3b_j3, "h3b_j3");

    double worst_tail = 0.0;
    const char* worst_diss = "";
    auto dissipation = [&](double LedgerRow::* mem, const char* name) {
      const double total = rows.back().*mem;
      if (total <= 0.0) return;  // nothing accumulated, trivially converged
      double at34 = 0.0;
      for (const LedgerRow& r : rows)
        if (r.t >= 0.75 * base.t_end * (1.0 - 1e-12)) {
          at34 = r.*mem;
          break;
        }
      const double frac = (total - at34) / total;
      if (frac > worst_tail) {
        worst_tail = frac;
        worst_diss = name;
      }
    };
    dissipation(&LedgerRow::diss_w4, "diss_w4");
    dissipation(&LedgerRow::diss_w5, "diss_w5");
    dissipation(&LedgerRow::diss_w6, "diss_w6");
    dissipation(&LedgerRow::diss_w7, "diss_w7");
    dissipation(&LedgerRow::diss_b0, "diss_b0");
    dissipation(&LedgerRow::diss_b1, "diss_b1");
    dissipation(&LedgerRow::diss_b2, "diss_b2");
    dissipation(&LedgerRow::diss_bdry, "diss_bdry");

    const double bound = base.bound_factor * ts;
    add(11, "energy ledger bounded, dissipation",
        worst_ratio <= bound && worst_tail <= 0.10 * ts, worst_ratio, bound,
        fmt("worst norm %s; final-quarter dissipation %.3f of total (%s, need "
            "<= %.3f)",
            worst_norm, worst_tail, worst_diss, 0.10 * ts));
  });

  guarded(12, "oracle equivalence, scheme order", [&] {
    const ProfileTable& p = need_profile();
    RunConfig fine_cfg = base;
    fine_cfg.resolution *= 2;
    const ProfileTable q = make_profile(fine_cfg);
    const double lo = std::max(p.z_left(), q.z_left());
    const double hi = std::min(p.z_right(), q.z_right());
    double worst = 0.0;
    for (int j = 0; j < 100; ++j) {
      const double z = lo + (hi - lo) * j / 99.0;
      const double a = p.eval_U(z);
      const double b = q.eval_U(z);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
    }

    RunConfig rr = base;
    rr.bump = BumpSpec{};
    rr.L = std::min(base.L, 140.0);
    rr.t_end = std::min(base.t_end, 10.0);
    const RefinementStudy study = grid_refinement_study(rr, {1000, 2000, 4000});
    const double lo_ord = 0.8 / ts;
    const double hi_ord = 2.2 * ts;
    const bool order_ok = study.order >= lo_ord && study.order <= hi_ord;

    add(12, "oracle equivalence, scheme order",
        worst <= 1e-7 * ts && order_ok, worst, 1e-7 * ts,
        fmt("order=%.3f in [%.2f, %.2f], monotone=%s, errs=(%.2e, %.2e, %.2e)",
            study.order, lo_ord, hi_ord, study.monotone ? "yes" : "no",
            study.levels[0].sup_err_final, study.levels[1].sup_err_final,
            study.levels[2].sup_err_final));
  });

  guarded(13, "byte-identical reruns", [&] {
    const ProfileTable& p = need_profile();
    RunConfig rd = bump_cfg;
    rd.L = std::min(bump_cfg.L, 140.0);
    rd.nx = std::min(bump_cfg.nx, 1400);
    rd.t_end = std::min(bump_cfg.t_end, 5.0);
    rd.snapshot_times = {rd.t_end / 2.0};

    namespace fs = std::filesystem;
    const std::string da = opts.out_dir + "/det_a";
    const std::string db = opts.out_dir + "/det_b";
    fs::remove_all(da);
    fs::remove_all(db);
    write_simulation_outputs(run_simulation(rd, p), p, da);
    write_simulation_outputs(run_simulation(rd, p), p, db);

    int compared = 0, mismatched = 0;
    std::string first_bad;
    for (const auto& entry : fs::directory_iterator(da)) {
      const std::string name = entry.path().filename().string();
      ++compared;
      const std::string twin = db + "/" + name;
      if (!fs::exists(twin) ||
          read_file_bytes(entry.path().string()) != read_file_bytes(twin)) {
        ++mismatched;
        if (first_bad.empty()) first_bad = name;
      }
    }
    const bool pass = mismatched == 0 && compared >= 4;
    add(13, "byte-identical reruns", pass, mismatched, 0.0,
        fmt("%d files compared%s%s", compared, first_bad.empty() ? "" : ", first diff: ",
            first_bad.c_str()));
  });

  return results;
}

int print_report(const std::vector<CriterionResult>& results, std::ostream& out) {
  int failures = 0;
  for (const CriterionResult& r : results) {
    out << fmt("[%s] %2d %-36s measured=%-11.4g required=%-11.4g %s",
               r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured,
               r.required, r.detail.c_str())
        << '\n';
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace fdshock
