#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "shock_profile.hpp"

namespace fdshock {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double required = 0.0;
  std::string detail;
};

struct VerifyOptions {
  // Scales every tolerance: > 1 loosens, < 1 tightens. Thresholds that are
  // lower bounds (decay ratios, scheme order) scale inversely so a smaller
  // factor always means a stricter suite.
  double tolerance_scale = 1.0;
  std::string out_dir = "verify_out";  // scratch for the determinism reruns
};

// Max relative defect of a tabulated profile against its model's traveling
// wave ODE: the stored values are differentiated with a 7-point stencil and
// compared to the right-hand side, so the stored slopes never enter. Also the
// detector behind the monotonicity/residual criterion.
double profile_ode_residual(const ProfileTable& table);

// Runs the full property suite against the given configuration: profile
// construction checks, the coupled baseline run with its refinement and
// determinism companions, and the remainder/energy diagnostics. Expensive
// artifacts are computed once and shared. A thrown error inside one
// criterion fails that criterion (and any other that needed the same
// artifact) without aborting the rest.
std::vector<CriterionResult> run_verification(const RunConfig& base,
                                              const VerifyOptions& opts);

// One aligned line per criterion; returns the number of failures.
int print_report(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace fdshock
