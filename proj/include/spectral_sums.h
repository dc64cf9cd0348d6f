/* SPDX-License-Identifier: Apache-2.0 */
#ifndef SPECTRAL_SUMS_H
#define SPECTRAL_SUMS_H

/*
 * C interface to the spectral-sums library.
 *
 * All functions that can fail return an ss_status; SS_OK is 0. On any other
 * status the thread-local message from ss_last_error() describes the problem.
 * Objects returned through ** out parameters are owned by the caller and must
 * be released with the matching *_destroy function.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
  SS_OK = 0,
  SS_ERR_INVALID_ARGUMENT = 1, /* precondition violated                    */
  SS_ERR_SOLVER = 2,           /* eigenvalue iteration or certification    */
  SS_ERR_DOMAIN = 3,           /* evaluation outside the mathematical domain */
  SS_ERR_INTERNAL = 4          /* unexpected failure                       */
} ss_status;

typedef struct ss_potential ss_potential;
typedef struct ss_spectrum ss_spectrum;

/* Library version string, e.g. "1.0.0". */
const char* ss_version(void);

/* Thread-local message describing the most recent failure; "" if none. */
const char* ss_last_error(void);

/* Stable help text: job types and config schema of the batch runner. */
const char* ss_jobs_help(void);

/*
 * Potential on (0, pi), either a cosine series q = q0/2 + sum q_k cos(kx)
 * (coeffs[k] = q_k, count >= 1) or point samples on the uniform closed grid
 * x_i = pi*i/grid (count == grid + 1, grid even and >= 8).
 */
ss_status ss_potential_create_fourier(const double* coeffs, size_t count, ss_potential** out);
ss_status ss_potential_create_sampled(int grid, const double* values, size_t count,
                                      ss_potential** out);
void ss_potential_destroy(ss_potential* p);

/* Value at x in [0, pi]; sampled potentials interpolate linearly. */
ss_status ss_potential_eval(const ss_potential* p, double x, double* out);

/* Mean value over (0, pi); sampled potentials use the trapezoid rule. */
ss_status ss_potential_mean(const ss_potential* p, double* out);

/* Boundary condition selectors for the interval problem. */
#define SS_BC_DIRICHLET 0
#define SS_BC_NEUMANN 1

/*
 * First `count` eigenvalues of -u'' + q u on (0, pi) by the Galerkin method.
 * basis <= 0 selects the default trial-space size max(4*count, count + 32);
 * otherwise basis must be >= 8 and >= max(4*count, count + 32). Eigenvalues
 * are upper bounds, listed with per-value truncation-error estimates.
 */
ss_status ss_interval_spectrum(const ss_potential* p, int bc, int count, int basis,
                               ss_spectrum** out);

/*
 * Independent second-order finite-difference solve on `grid` subintervals
 * (grid even, >= 64*count). Sampled potentials must be given on exactly this
 * grid.
 */
ss_status ss_interval_fd_spectrum(const ss_potential* p, int bc, int count, int grid,
                                  ss_spectrum** out);

int ss_spectrum_count(const ss_spectrum* s);
ss_status ss_spectrum_values(const ss_spectrum* s, double* out, size_t capacity);
ss_status ss_spectrum_error_estimates(const ss_spectrum* s, double* out, size_t capacity);
void ss_spectrum_destroy(ss_spectrum* s);

/*
 * Batch driver: runs a JSON job config, writing one CSV per job and a
 * run-manifest.json into out_dir. *cli_exit receives the runner exit code
 * (0 pass, 2 failed inequality, 3 solver error, 4 schema violation); the
 * return status is SS_OK whenever the run reached a verdict, including
 * verdicts 2/3/4.
 */
ss_status ss_run_config(const char* config_path, const char* out_dir, int jobs_parallel,
                        double tolerance_scale, int* cli_exit);

#ifdef __cplusplus
}
#endif

#endif /* SPECTRAL_SUMS_H */
