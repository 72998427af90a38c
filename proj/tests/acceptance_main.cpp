// Acceptance gate: runs the full property suite against the reference
// configuration through the shared C API, printing one pass/fail line per
// criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <cstring>

#include "fdshock.h"

namespace {

const char* kBaseline =
    "model.kind = burgers\n"
    "model.u_minus = 2\n"
    "model.m = 0.75\n"
    "grid.L = 200\n"
    "grid.nx = 4000\n"
    "run.t_end = 40\n"
    "init.center = 20\n"
    "init.bump.amplitude = 0.05\n"
    "init.bump.center = 10\n"
    "init.bump.width = 2\n"
    "ledger.record_every = 20\n";

}  // namespace

int main() {
  fdshock_config* cfg = nullptr;
  if (fdshock_config_parse(kBaseline, &cfg) != FDSHOCK_OK) {
    std::fprintf(stderr, "configuration error: %s\n", fdshock_last_error());
    return 2;
  }

  static char report[1 << 16];
  int failures = -1;
  const fdshock_status st = fdshock_run_verify(cfg, "acceptance_out", 1.0,
                                               report, sizeof(report), &failures);
  fdshock_config_free(cfg);

  if (st != FDSHOCK_OK) {
    std::fprintf(stderr, "verification aborted: %s\n", fdshock_last_error());
    return 2;
  }
  std::fputs(report, stdout);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures > 0 ? 1 : 0;
}
