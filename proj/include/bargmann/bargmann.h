/* C interface to the bargmann numerics library. */
#ifndef BARGMANN_BARGMANN_H
#define BARGMANN_BARGMANN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BARGMANN_BUILDING_DLL)
#    define BF_API __declspec(dllexport)
#  else
#    define BF_API __declspec(dllimport)
#  endif
#else
#  define BF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bf_status {
  BF_OK = 0,
  BF_INVALID_ARGUMENT,
  BF_OVERFLOW,
  BF_RADIUS_TOO_SMALL,
  BF_UNSUPPORTED_REPRESENTATION,
  BF_ALPHA_MISMATCH,
  BF_EMPTY_WINDOW,
  BF_DUPLICATE_POINTS,
  BF_COLLISION_AFTER_PERTURBATION,
  BF_TOO_FEW_POINTS,
  BF_NOT_UNIFORMLY_CLOSE,
  BF_WINDOW_TOO_SMALL,
  BF_TRUNCATION_TOO_SMALL,
  BF_INCONSISTENT_PROBES,
  BF_NODE_INDEX_MISSING,
  BF_QUADRATURE_ORDER_TOO_LOW,
  BF_POINT_NOT_IN_SET,
  BF_DENSITY_ORDER_VIOLATED,
  BF_MISSING_SAMPLES,
  BF_IO,
  BF_INTERNAL
} bf_status;

typedef struct bf_pointset bf_pointset;
typedef struct bf_function bf_function;
typedef struct bf_canonical bf_canonical;
typedef struct bf_reconstructor bf_reconstructor;
typedef struct bf_interpolant bf_interpolant;

BF_API const char* bf_version(void);
/* Symbolic name, e.g. "DensityOrderViolated". */
BF_API const char* bf_status_name(bf_status status);
/* Message of the last failure on this thread; "" after success. */
BF_API const char* bf_last_error(void);
/* Strings handed out through char** parameters. */
BF_API void bf_string_free(char* s);

/* Point sets */
BF_API bf_status bf_pointset_square_lattice(double spacing, double window_radius, bf_pointset** out);
BF_API bf_status bf_pointset_rectangular_lattice(double a, double b, double window_radius, bf_pointset** out);
/* m, n may both be NULL for an unindexed set. */
BF_API bf_status bf_pointset_from_arrays(const double* x, const double* y, const int64_t* m, const int64_t* n,
                                         size_t count, double window_radius, bf_pointset** out);
/* window_radius < 0 takes the largest modulus in the file. */
BF_API bf_status bf_pointset_from_csv(const char* text, double window_radius, bf_pointset** out);
BF_API bf_status bf_pointset_perturb(const bf_pointset* lattice, double max_shift, uint64_t seed, bf_pointset** out);
BF_API void bf_pointset_free(bf_pointset* ps);

BF_API size_t bf_pointset_size(const bf_pointset* ps);
BF_API double bf_pointset_window(const bf_pointset* ps);
BF_API int bf_pointset_has_index(const bf_pointset* ps);
/* m, n may be NULL. */
BF_API bf_status bf_pointset_get(const bf_pointset* ps, size_t i, double* x, double* y, int64_t* m, int64_t* n);
BF_API bf_status bf_pointset_to_csv(const bf_pointset* ps, char** csv);
BF_API bf_status bf_pointset_separation(const bf_pointset* ps, double* q);
/* Largest displacement from the rounded lattice site. */
BF_API bf_status bf_pointset_closeness(const bf_pointset* ps, double spacing, double* Q);
BF_API bf_status bf_pointset_counts(const bf_pointset* ps, double r, double translate_step, int64_t* n_minus,
                                    int64_t* n_plus);
BF_API bf_status bf_density_report(const bf_pointset* ps, const double* radii, size_t count, double translate_step,
                                   char** json);

/* Spacing sqrt(pi / (alpha * ratio)). */
BF_API bf_status bf_lattice_spacing_for_density(double alpha, double ratio, double* spacing);

/* Sampling */
BF_API bf_status bf_frame_bounds(const bf_pointset* ps, double alpha, int degree, double window_radius, char** json);
/* One row {N, A, B, effective_radius, reliable} per entry of degrees. */
BF_API bf_status bf_frame_ladder(const bf_pointset* ps, double alpha, const int* degrees, size_t count,
                                 double window_radius, char** json);
BF_API bf_status bf_point_removal(const bf_pointset* ps, double alpha, int degree, double x, double y, char** json);

/* Fock space functions */
BF_API bf_status bf_function_from_json(const char* text, bf_function** out);
BF_API bf_status bf_function_monomial(double alpha, const double* re, const double* im, size_t count,
                                      bf_function** out);
BF_API void bf_function_free(bf_function* f);
BF_API bf_status bf_function_to_json(const bf_function* f, char** json);
BF_API double bf_function_alpha(const bf_function* f);
BF_API bf_status bf_function_eval(const bf_function* f, double x, double y, double* re, double* im);
BF_API bf_status bf_function_eval_log(const bf_function* f, double x, double y, double* log_mag, double* phase);
BF_API bf_status bf_function_norm2(const bf_function* f, double* norm);
BF_API bf_status bf_norm_decomposition(const bf_function* f, int K, double* gap);

/* sigma and canonical products */
BF_API bf_status bf_sigma_log(double spacing, double x, double y, double* log_mag, double* phase);
/* truncation < 0 uses the largest index present. */
BF_API bf_status bf_canonical_create(const bf_pointset* gamma, double spacing, int truncation, bf_canonical** out);
BF_API void bf_canonical_free(bf_canonical* g);
BF_API bf_status bf_canonical_log_value(const bf_canonical* g, double x, double y, double* log_mag, double* phase);
BF_API bf_status bf_canonical_growth_check(const bf_canonical* g, double alpha, double grid_radius, double grid_step,
                                           char** json);

/* Reconstruction and interpolation.
   The problem text is {"alpha", "lattice_spacing", "nodes": [[x,y,m,n],...], "data": [[re,im],...]};
   for reconstruction the data are samples f(z), for interpolation weighted targets. */
BF_API bf_status bf_reconstructor_from_problem(const char* problem_json, double truncation_radius,
                                               bf_reconstructor** out);
BF_API void bf_reconstructor_free(bf_reconstructor* r);
BF_API bf_status bf_reconstructor_eval(const bf_reconstructor* r, double x, double y, double* re, double* im);

BF_API bf_status bf_interpolant_from_problem(const char* problem_json, double truncation_radius,
                                             bf_interpolant** out);
BF_API void bf_interpolant_free(bf_interpolant* ev);
/* e^{-alpha|z|^2/2} f(z) */
BF_API bf_status bf_interpolant_weighted(const bf_interpolant* ev, double x, double y, double* re, double* im);
BF_API bf_status bf_interpolant_residual(const bf_interpolant* ev, double* residual);
BF_API bf_status bf_interpolant_pointwise_constant(const bf_interpolant* ev, double grid_step, double* C);
BF_API bf_status bf_interpolant_norm_report(const bf_interpolant* ev, int degree, char** json);

#ifdef __cplusplus
}
#endif

#endif
