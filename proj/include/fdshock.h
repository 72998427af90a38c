#ifndef FDSHOCK_H
#define FDSHOCK_H

/* C interface to the fast-diffusion shock laboratory: singular traveling
 * wave profiles, the coupled half-line simulation with its boundary shift,
 * parameter sweeps, and the property-based verification suite. All entry
 * points return a status code; details of the most recent failure on the
 * calling thread come from fdshock_last_error(). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdshock_status {
  FDSHOCK_OK = 0,
  FDSHOCK_ERR_INVALID_ARGUMENT = 1, /* bad configuration or parameter */
  FDSHOCK_ERR_DOMAIN = 2,           /* evaluation outside a math domain */
  FDSHOCK_ERR_RUNTIME = 3,          /* numerical failure (Newton, invariants) */
  FDSHOCK_ERR_LOGIC = 4,            /* internal invariant breach */
  FDSHOCK_ERR_IO = 5,               /* file could not be read or written */
  FDSHOCK_ERR_UNKNOWN = 6
} fdshock_status;

typedef struct fdshock_config fdshock_config;
typedef struct fdshock_profile fdshock_profile;

/* Message of the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next fdshock call on the same thread. */
const char* fdshock_last_error(void);

/* Configuration objects hold raw key=value text; full validation happens
 * when a pipeline consumes them. */
fdshock_status fdshock_config_load(const char* path, fdshock_config** out);
fdshock_status fdshock_config_parse(const char* text, fdshock_config** out);
fdshock_status fdshock_config_set(fdshock_config* cfg, const char* key,
                                  const char* value);
void fdshock_config_free(fdshock_config* cfg);

/* Scalar probes of the configured flux model. */
fdshock_status fdshock_shock_speed(const fdshock_config* cfg, double* out);
fdshock_status fdshock_lambda_minus(const fdshock_config* cfg, double* out);

/* Traveling-wave profile as an evaluable object. */
fdshock_status fdshock_profile_build(const fdshock_config* cfg,
                                     fdshock_profile** out);
fdshock_status fdshock_profile_eval(const fdshock_profile* p, double z,
                                    double* u, double* uz);
fdshock_status fdshock_profile_tail_exponent(const fdshock_profile* p,
                                             double* out);
void fdshock_profile_free(fdshock_profile* p);

/* Pipelines; artifacts land in out_dir (NULL uses the configured output
 * directory). Outputs are deterministic functions of the configuration. */
fdshock_status fdshock_run_profile(const fdshock_config* cfg,
                                   const char* out_dir);
fdshock_status fdshock_run_simulate(const fdshock_config* cfg,
                                    const char* out_dir);
fdshock_status fdshock_run_sweep(const fdshock_config* cfg,
                                 const char* out_dir);

/* Runs the acceptance suite. The per-criterion report (one line each) is
 * written NUL-terminated into report (truncated to report_cap); *failures
 * receives the number of failing criteria. Returns FDSHOCK_OK when the suite
 * executed, regardless of how many criteria failed. */
fdshock_status fdshock_run_verify(const fdshock_config* cfg,
                                  const char* out_dir, double tolerance_scale,
                                  char* report, size_t report_cap,
                                  int* failures);

#ifdef __cplusplus
}
#endif

#endif /* FDSHOCK_H */
