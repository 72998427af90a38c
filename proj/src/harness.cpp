#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>
#include <utility>

#include "csv.hpp"
#include "numerics.hpp"

namespace fdshock {

namespace {

bool close_to(double a, double b) {
  return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b));
}

// Short %g form for file and directory names (0.6 stays "0.6").
std::string compact_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

ProfileTable make_profile(const RunConfig& rc) {
  return build_profile(rc.make_model(), rc.z_min, rc.z_max, rc.resolution);
}

SimulationArtifacts run_simulation(const RunConfig& rc, const ProfileTable& profile) {
  const FluxModel& model = profile.model();
  const Grid1D grid = rc.make_grid();
  const double m = model.m();

  SimulationArtifacts art;
  art.config = rc;
  art.g_ratio_small_sup = std::numeric_limits<double>::quiet_NaN();

  InitResult init = init_field(profile, grid, rc.center, rc.bump);
  // init_field balances the half-line mass identity, but the run and its
  // recorded mass residual live on [0, L]. Add back the profile mass the
  // shift relocates across x = L so the windowed integral starts at zero;
  // without this M(0) carries a resolution-independent offset near
  // (d0 - center) * U(L - center). One correction pass is enough since the
  // leftover is second order in that tail mass.
  const double d0_half = solve_d0(profile, init.excess_mass);
  const double window = simpson([&](double x) { return profile.eval_U(x); },
                                rc.L - d0_half, rc.L - rc.center, 512);
  art.excess_mass = init.excess_mass + window;
  art.d0 = solve_d0(profile, art.excess_mass);

  Field field = std::move(init.field);
  ShiftState shift = initial_shift_state(model, art.d0);
  const double B0 = boundary_mismatch(field, profile, shift, m);
  shift.d_prime = d_prime_solve(model, profile, shift, B0);

  const WeightSpec spec = rc.beta > 0.0
                              ? WeightSpec::with_beta(model, profile, rc.beta)
                              : WeightSpec::standard(model, profile);
  art.ledger = make_ledger(spec, art.d0);

  art.min_u = field.u.front();
  art.max_u = field.u.front();
  for (double u : field.u) {
    art.min_u = std::min(art.min_u, u);
    art.max_u = std::max(art.max_u, u);
  }

  double floored_total = 0.0;
  double int_abs_dprime = 0.0;
  int iters_window = 0;

  // Mass exported through x = L beyond what the comparison profile's own flux
  // s U(L - s t - d) carries (the profile ODE collapses f(U) - U^{m-1} U_z to
  // exactly s U). The conservation identity on the truncated window needs this
  // bookkept: the far tail physically lags the front's shift, so a deficit
  // worth (d0 - center) * U(xi_L) crosses the outflow boundary over the run,
  // at a rate independent of resolution. Correcting M by the accumulated gap
  // leaves only wall-coupling discretization error in the residual.
  double export_gap = 0.0;

  auto record = [&](double B) {
    const PerturbationField pert = compute_phi(field, profile, shift, -export_gap);
    ledger_update(art.ledger, pert, profile, shift);
    const LedgerRow& row = art.ledger.rows.back();

    TimePoint tp;
    tp.t = field.t;
    tp.d = shift.d;
    tp.dprime = shift.d_prime;
    tp.Ub = profile.eval_U(shift.wall_z());
    tp.B = B;
    tp.sup_err = sup_error(field, profile, shift);
    tp.mass_residual = mass_residual(field, profile, shift) + export_gap;
    tp.phi_wall = pert.phi.front();
    tp.floored_mass = floored_total;
    tp.newton_iters = iters_window;
    tp.int_abs_dprime = int_abs_dprime;
    art.series.push_back(tp);
    iters_window = 0;

    if (std::isfinite(row.ratio_F))
      art.f_ratio_sup = std::max(art.f_ratio_sup, row.ratio_F);
    art.sobolev_sup.phi_over_Um = std::max(art.sobolev_sup.phi_over_Um, row.sob_phi);
    art.sobolev_sup.phix_over_U = std::max(art.sobolev_sup.phix_over_U, row.sob_phix);

    // Quadratic-regime samples of the diffusion remainder: restrict to cells
    // where the perturbation is small against the profile so the ratio sits
    // near its pointwise limit m(1-m)/2.
    for (size_t i = 0; i < pert.phi_x.size(); ++i) {
      const double p = pert.phi_x[i];
      if (std::abs(p) <= 1e-8) continue;
      const double xi = (static_cast<double>(i) + 0.5) * field.dx -
                        shift.speed * shift.t - shift.d;
      const double U = profile.eval_U(xi);
      if (!(std::abs(p) <= 0.01 * U)) continue;
      const double ratio =
          std::abs(compute_G(m, U, p)) * std::pow(U, 2.0 - m) / (p * p);
      if (art.g_small_samples == 0 || ratio > art.g_ratio_small_sup)
        art.g_ratio_small_sup = ratio;
      ++art.g_small_samples;
    }
  };

  size_t next_snap = 0;
  while (next_snap < rc.snapshot_times.size() &&
         rc.snapshot_times[next_snap] <= 0.0) {
    art.snapshots.emplace_back(field, shift);
    ++next_snap;
  }

  record(B0);
  art.sobolev_initial = SobolevRatios{art.ledger.rows.front().sob_phi,
                                      art.ledger.rows.front().sob_phix};

  const double t_end = rc.t_end;
  long step_count = 0;
  while (field.t < t_end - 1e-12 * (1.0 + t_end)) {
    double stop = t_end;
    if (next_snap < rc.snapshot_times.size())
      stop = std::min(stop, rc.snapshot_times[next_snap]);

    const ShiftState pre = shift;
    const StepReport rep = step(field, model, profile, pre, rc.solver, stop - field.t);
    const ShiftState tent{field.t, pre.d + rep.dt * pre.d_prime, pre.d_prime,
                          pre.d0, pre.speed};
    const double B = boundary_mismatch(field, profile, tent, m);
    const double dp = d_prime_solve(model, profile, tent, B);
    shift = advance_shift(pre, dp, rep.dt);

    const double profile_export =
        0.5 * rep.dt * shift.speed *
        (profile.eval_U(rc.L + pre.wall_z()) + profile.eval_U(rc.L + shift.wall_z()));
    export_gap += rep.right_mass_outflux - profile_export;
    art.right_outflux_total += rep.right_mass_outflux;

    ++step_count;
    floored_total += rep.floored_mass;
    int_abs_dprime += 0.5 * rep.dt * (std::abs(pre.d_prime) + std::abs(dp));
    iters_window = std::max(iters_window, rep.newton_iters);

    for (double u : field.u) {
      art.min_u = std::min(art.min_u, u);
      art.max_u = std::max(art.max_u, u);
    }
    art.shift_gap_max =
        std::max(art.shift_gap_max,
                 -0.5 * shift.speed * shift.t - shift.d + shift.d0);

    bool at_snap = false;
    while (next_snap < rc.snapshot_times.size() &&
           close_to(field.t, rc.snapshot_times[next_snap])) {
      art.snapshots.emplace_back(field, shift);
      ++next_snap;
      at_snap = true;
    }
    const bool at_end = field.t >= t_end - 1e-12 * (1.0 + t_end);
    if (at_snap || at_end || step_count % rc.record_every == 0) record(B);
  }

  art.steps = step_count;
  art.floored_total = floored_total;
  art.export_gap_final = export_gap;
  art.final_shift = shift;
  art.final_field = std::move(field);
  return art;
}

void write_simulation_outputs(const SimulationArtifacts& art,
                              const ProfileTable& profile,
                              const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    CsvWriter ts(out_dir + "/timeseries.csv",
                 {"t", "d", "dprime", "Ub", "B", "sup_err", "mass_residual",
                  "phi_wall", "floored_mass", "newton_iters"});
    for (const TimePoint& p : art.series)
      ts.row({p.t, p.d, p.dprime, p.Ub, p.B, p.sup_err, p.mass_residual,
              p.phi_wall, p.floored_mass, static_cast<double>(p.newton_iters)});
  }
  {
    const auto& names = ledger_columns();
    CsvWriter lg(out_dir + "/ledger.csv",
                 std::vector<std::string>(names.begin(), names.end()));
    for (const LedgerRow& row : art.ledger.rows) {
      const auto vals = ledger_row_values(row);
      lg.row(std::vector<double>(vals.begin(), vals.end()));
    }
  }
  for (size_t k = 0; k < art.snapshots.size(); ++k) {
    const auto& [field, shift] = art.snapshots[k];
    // Named after the requested time, which snapshots consume in order.
    const double t_req = art.config.snapshot_times[k];
    const PerturbationField pert = compute_phi(field, profile, shift);
    CsvWriter snap(out_dir + "/snapshot_" + compact_number(t_req) + ".csv",
                   {"x", "u", "U_shifted", "phi", "phi_x"});
    for (size_t i = 0; i < field.u.size(); ++i) {
      const double x = (static_cast<double>(i) + 0.5) * field.dx;
      snap.row({x, field.u[i],
                profile.eval_U(x - shift.speed * shift.t - shift.d), pert.phi[i],
                pert.phi_x[i]});
    }
  }

  write_json_file(
      out_dir + "/run_summary.json",
      {{"seed", std::to_string(art.config.seed)},
       {"model_kind", "\"" + art.config.model_kind + "\""},
       {"m", format_g17(art.config.m)},
       {"u_minus", format_g17(art.config.u_minus)},
       {"d0", format_g17(art.d0)},
       {"excess_mass", format_g17(art.excess_mass)},
       {"steps", std::to_string(art.steps)},
       {"t_final", format_g17(art.final_shift.t)},
       {"d_final", format_g17(art.final_shift.d)},
       {"dprime_final", format_g17(art.final_shift.d_prime)},
       {"min_u", format_g17(art.min_u)},
       {"max_u", format_g17(art.max_u)},
       {"floored_total", format_g17(art.floored_total)},
       {"right_outflux_total", format_g17(art.right_outflux_total)},
       {"export_gap_final", format_g17(art.export_gap_final)},
       {"shift_gap_max", format_g17(art.shift_gap_max)},
       {"f_ratio_sup", format_g17(art.f_ratio_sup)},
       {"g_ratio_small_sup", format_g17(art.g_ratio_small_sup)},
       {"g_small_samples", std::to_string(art.g_small_samples)},
       {"sob_phi_initial", format_g17(art.sobolev_initial.phi_over_Um)},
       {"sob_phix_initial", format_g17(art.sobolev_initial.phix_over_U)},
       {"sob_phi_sup", format_g17(art.sobolev_sup.phi_over_Um)},
       {"sob_phix_sup", format_g17(art.sobolev_sup.phix_over_U)},
       {"n_final", format_g17(art.ledger.rows.back().n_of_t)}});
}

void write_profile_outputs(const RunConfig& rc, const ProfileTable& profile,
                           const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    CsvWriter pf(out_dir + "/profile.csv", {"z", "U", "Uz", "Uzz"});
    for (double z : profile.z_samples())
      pf.row({z, profile.eval_U(z), profile.eval_Uz(z), profile.eval_Uzz(z)});
  }
  const DerivativeRatios r = derivative_bound_ratios(profile);
  write_json_file(
      out_dir + "/profile_summary.json",
      {{"m", format_g17(rc.m)},
       {"u_minus", format_g17(rc.u_minus)},
       {"speed", format_g17(profile.model().speed())},
       {"lambda_minus", format_g17(profile.lambda_minus())},
       {"z_left", format_g17(profile.z_left())},
       {"z_right", format_g17(profile.z_right())},
       {"right_tail_exponent", format_g17(right_tail_exponent_fit(profile))},
       {"right_tail_exponent_target", format_g17(1.0 / (1.0 - rc.m))},
       {"left_tail_rate", format_g17(left_tail_rate_fit(profile))},
       {"left_tail_amplitude", format_g17(profile.left_tail_amplitude())},
       {"r1", format_g17(r.r1)},
       {"r2", format_g17(r.r2)},
       {"r3", format_g17(r.r3)},
       {"r4", format_g17(r.r4)},
       {"r1_right_limit", format_g17(r.r1_right_limit)},
       {"xi_star", format_g17(find_xi_star(profile))}});
}

RefinementStudy grid_refinement_study(const RunConfig& base,
                                      const std::vector<int>& nx_levels) {
  if (nx_levels.size() < 2)
    throw std::invalid_argument("refinement study needs at least two levels");
  const ProfileTable profile = make_profile(base);

  RefinementStudy out;
  std::vector<double> log_dx, log_err;
  for (int nx : nx_levels) {
    RunConfig rc = base;
    rc.nx = nx;
    const SimulationArtifacts art = run_simulation(rc, profile);
    RefinementLevel lvl;
    lvl.nx = nx;
    lvl.dx = rc.L / nx;
    lvl.sup_err_final = art.series.back().sup_err;
    for (const TimePoint& p : art.series)
      lvl.mass_residual_max = std::max(lvl.mass_residual_max, std::abs(p.mass_residual));
    out.levels.push_back(lvl);
    log_dx.push_back(std::log(lvl.dx));
    log_err.push_back(std::log(std::max(lvl.sup_err_final, 1e-300)));
  }
  out.order = ls_slope(log_dx, log_err);
  out.monotone = true;
  for (size_t i = 1; i < out.levels.size(); ++i)
    if (out.levels[i].sup_err_final >= out.levels[i - 1].sup_err_final)
      out.monotone = false;
  return out;
}

std::vector<SweepPoint> run_sweep(const RunConfig& base, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  std::vector<std::pair<double, double>> points;
  for (double m : base.sweep_m_values)
    for (double c : base.sweep_centers) points.emplace_back(m, c);

  auto run_point = [&base, &out_dir](double m, double center) {
    SweepPoint sp;
    sp.m = m;
    sp.center = center;
    sp.tail_exponent_target = 1.0 / (1.0 - m);
    const std::string dir =
        out_dir + "/m" + compact_number(m) + "_c" + compact_number(center);
    try {
      RunConfig rc = base;
      rc.m = m;
      rc.center = center;
      const ProfileTable profile = make_profile(rc);
      sp.left_rate_target = profile.lambda_minus();
      sp.tail_exponent = right_tail_exponent_fit(profile);
      sp.left_rate = left_tail_rate_fit(profile);
      const SimulationArtifacts art = run_simulation(rc, profile);
      write_simulation_outputs(art, profile, dir);
      sp.d0 = art.d0;
      sp.final_sup_err = art.series.back().sup_err;
      sp.d_inf_est = art.final_shift.d;
      sp.ok = true;
    } catch (const std::exception& e) {
      sp.error = e.what();
      std::filesystem::create_directories(dir);
      std::ofstream(dir + "/error.txt") << e.what() << '\n';
    }
    return sp;
  };

  std::vector<std::future<SweepPoint>> futures;
  futures.reserve(points.size());
  for (const auto& [m, c] : points)
    futures.push_back(std::async(std::launch::async, run_point, m, c));

  std::vector<SweepPoint> out;
  out.reserve(points.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

void write_sweep_csv(const std::vector<SweepPoint>& points,
                     const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  CsvWriter sw(out_dir + "/sweep.csv",
               {"m", "center", "ok", "d0", "final_sup_err", "d_inf_est",
                "tail_exponent", "tail_exponent_target", "left_rate",
                "left_rate_target"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SweepPoint& p : points) {
    if (p.ok)
      sw.row({p.m, p.center, 1.0, p.d0, p.final_sup_err, p.d_inf_est,
              p.tail_exponent, p.tail_exponent_target, p.left_rate,
              p.left_rate_target});
    else
      sw.row({p.m, p.center, 0.0, nan, nan, nan, nan, nan, nan, nan});
  }
}

}  // namespace fdshock
