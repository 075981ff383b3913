/* wigmd - phase-space uncertainty toolkit, C interface.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return WIGMD_OK on success; on failure they return an error code
 * and leave a human-readable message in wigmd_last_error() (thread-local).
 * Complex values cross the boundary as interleaved re,im doubles.
 */

#ifndef WIGMD_H
#define WIGMD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WIGMD_API __declspec(dllexport)
#else
#define WIGMD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wigmd_status {
  WIGMD_OK = 0,
  WIGMD_ERR_INVALID_ARGUMENT = 1,
  WIGMD_ERR_GRID_MISMATCH = 2,
  WIGMD_ERR_UNRESOLVED_DEGREE = 3,
  WIGMD_ERR_NOT_NORMALIZED = 4,
  WIGMD_ERR_NOT_ORTHONORMAL = 5,
  WIGMD_ERR_SINGULAR_MATRIX = 6,
  WIGMD_ERR_KERNEL_NOT_REAL = 7,
  WIGMD_ERR_PARSE = 8,
  WIGMD_ERR_IO = 9,
  WIGMD_ERR_OUT_OF_RANGE = 10,
  WIGMD_ERR_ZERO_SIGNAL = 11,
  WIGMD_ERR_INTERNAL = 12
} wigmd_status;

typedef struct wigmd_grid wigmd_grid;
typedef struct wigmd_signal wigmd_signal;
typedef struct wigmd_field wigmd_field;
typedef struct wigmd_op wigmd_op;
typedef struct wigmd_kernel wigmd_kernel;
typedef struct wigmd_family wigmd_family;
typedef struct wigmd_opmatrix wigmd_opmatrix;
typedef struct wigmd_report wigmd_report;

WIGMD_API const char* wigmd_version(void);
WIGMD_API const char* wigmd_last_error(void);

/* ---- grids and signals ---- */

WIGMD_API wigmd_status wigmd_grid_create(double half_width, int size, wigmd_grid** out);
WIGMD_API void wigmd_grid_destroy(wigmd_grid* grid);
WIGMD_API int wigmd_grid_size(const wigmd_grid* grid);
WIGMD_API double wigmd_grid_half_width(const wigmd_grid* grid);
WIGMD_API double wigmd_grid_spacing(const wigmd_grid* grid);

/* samples: 2*N doubles, interleaved re,im */
WIGMD_API wigmd_status wigmd_signal_create(const wigmd_grid* grid, const double* samples,
                                           wigmd_signal** out);
WIGMD_API wigmd_status wigmd_signal_hermite(const wigmd_grid* grid, int degree, wigmd_signal** out);
WIGMD_API wigmd_status wigmd_signal_named(const wigmd_grid* grid, const char* name, wigmd_signal** out);
WIGMD_API void wigmd_signal_destroy(wigmd_signal* signal);
WIGMD_API int wigmd_signal_size(const wigmd_signal* signal);
WIGMD_API wigmd_status wigmd_signal_samples(const wigmd_signal* signal, double* out /* 2*N */);
WIGMD_API double wigmd_signal_squared_norm(const wigmd_signal* signal);

WIGMD_API wigmd_status wigmd_signal_fourier(const wigmd_signal* in, wigmd_signal** out);
WIGMD_API wigmd_status wigmd_signal_position(const wigmd_signal* in, wigmd_signal** out);
WIGMD_API wigmd_status wigmd_signal_momentum(const wigmd_signal* in, wigmd_signal** out);
WIGMD_API wigmd_status wigmd_signal_inner(const wigmd_signal* f, const wigmd_signal* g,
                                          double out_reim[2]);
/* out: mu, mu_hat, var, var_hat, md_sum */
WIGMD_API wigmd_status wigmd_signal_moments(const wigmd_signal* f, double out[5]);

WIGMD_API wigmd_status wigmd_signal_save(const wigmd_signal* f, const char* path);
WIGMD_API wigmd_status wigmd_signal_load(const char* path, wigmd_signal** out);

/* ---- phase-space fields ---- */

WIGMD_API wigmd_status wigmd_cross_wigner(const wigmd_signal* f, const wigmd_signal* g,
                                          wigmd_field** out);
WIGMD_API wigmd_status wigmd_cohen(const wigmd_signal* f, const wigmd_signal* g,
                                   const wigmd_kernel* kernel, wigmd_field** out);
WIGMD_API void wigmd_field_destroy(wigmd_field* field);
WIGMD_API int wigmd_field_size(const wigmd_field* field); /* N; the field is N x N */
WIGMD_API double wigmd_field_squared_norm(const wigmd_field* field);
WIGMD_API wigmd_status wigmd_field_moyal(const wigmd_field* f, const wigmd_field* g,
                                         double out_reim[2]);
/* out: mean_x, mean_y, cxx, cxy, cyy, trace, energy_moment */
WIGMD_API wigmd_status wigmd_field_covariance(const wigmd_field* f, double out[7]);
WIGMD_API wigmd_status wigmd_field_save_text(const wigmd_field* f, const char* path);
WIGMD_API wigmd_status wigmd_field_save_ppm(const wigmd_field* f, const char* path);
WIGMD_API wigmd_status wigmd_field_save_svg(const wigmd_field* f, const char* path);

/* ---- phase-space operators and kernels ---- */

WIGMD_API wigmd_status wigmd_op_parse(const char* expr, wigmd_op** out);
WIGMD_API wigmd_status wigmd_op_lhat(wigmd_op** out);
WIGMD_API void wigmd_op_destroy(wigmd_op* op);
WIGMD_API wigmd_status wigmd_op_apply(const wigmd_op* op, const wigmd_field* in, wigmd_field** out);
WIGMD_API wigmd_status wigmd_op_quadratic_form(const wigmd_op* op, const wigmd_field* field,
                                               double out_reim[2]);

WIGMD_API wigmd_status wigmd_kernel_parse(const char* expr, wigmd_kernel** out);
WIGMD_API void wigmd_kernel_destroy(wigmd_kernel* kernel);

/* ---- families and Riesz matrices ---- */

WIGMD_API wigmd_status wigmd_family_hermite(int truncation, int count, wigmd_family** out);
WIGMD_API wigmd_status wigmd_family_random(int truncation, int count, uint64_t seed,
                                           wigmd_family** out);
WIGMD_API void wigmd_family_destroy(wigmd_family* family);
WIGMD_API double wigmd_family_gram_deviation(const wigmd_family* family);

/* spec: "identity" | "diag:..." | "random:cond=...,seed=..." */
WIGMD_API wigmd_status wigmd_opmatrix_generate(int truncation, const char* spec, wigmd_opmatrix** out);
WIGMD_API wigmd_status wigmd_opmatrix_load_csv(const char* path, wigmd_opmatrix** out);
WIGMD_API void wigmd_opmatrix_destroy(wigmd_opmatrix* matrix);
/* out: norm_u, norm_u_inverse, sigma_min, converged(0/1) */
WIGMD_API wigmd_status wigmd_opmatrix_norms(const wigmd_opmatrix* matrix, double out[4]);

/* ---- verification suites ---- */

/* suite: "mean-dispersion" | "covariance" | "identities" | "cohen" | "riesz".
 * config_json: RunConfig fields (all optional), e.g.
 *   {"N":512,"L":12.0,"K":32,"seed":1,"families":200,"n_max":8,
 *    "family":"hermite","kernels":["0"],"matrix":"sweep","cross_path":true}
 * Pass NULL for the defaults. */
WIGMD_API wigmd_status wigmd_run_suite(const char* suite, const char* config_json,
                                       wigmd_report** out);
WIGMD_API void wigmd_report_destroy(wigmd_report* report);
WIGMD_API int wigmd_report_pass(const wigmd_report* report);
WIGMD_API int wigmd_report_case_count(const wigmd_report* report);
/* returns an internal pointer valid for the report's lifetime; NULL if all passed */
WIGMD_API const char* wigmd_report_first_failure(const wigmd_report* report);
WIGMD_API const char* wigmd_report_json(const wigmd_report* report);
WIGMD_API const char* wigmd_report_csv(const wigmd_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WIGMD_H */
