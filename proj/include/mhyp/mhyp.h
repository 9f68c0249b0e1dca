/*
 * C interface to the matrix hypergeometric library.
 *
 * Objects are opaque handles created by *_create / *_from_json / operation
 * calls and released with the matching *_free. Every fallible call returns an
 * mhyp_status; on failure mhyp_last_error() describes the problem (the text is
 * thread-local and valid until the next failing call on the same thread).
 *
 * Complex data crosses the boundary as interleaved doubles (re, im). Matrices
 * are row-major, so an r x r matrix occupies 2*r*r doubles.
 *
 * Strings returned through char** are heap allocated; free them with
 * mhyp_string_free.
 */
#ifndef MHYP_H
#define MHYP_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef MHYP_BUILDING
#    define MHYP_API __declspec(dllexport)
#  else
#    define MHYP_API __declspec(dllimport)
#  endif
#else
#  define MHYP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mhyp_status {
  MHYP_OK = 0,
  MHYP_INVALID_MATRIX = 1,
  MHYP_EIGEN_FAILURE = 2,
  MHYP_SINGULAR_MATRIX = 3,
  MHYP_POLE_IN_PARAMETERS = 4,
  MHYP_RADIUS_VIOLATION = 5,
  MHYP_NO_CONVERGENCE = 6,
  MHYP_SHIFT_POLE_VIOLATION = 7,
  MHYP_RESONANT_EXPONENT = 8,
  MHYP_EMPTY_KERNEL = 9,
  MHYP_HYPOTHESIS_VIOLATION = 10,
  MHYP_ROOT_FAILURE = 11,
  MHYP_INVALID_EXAMPLE_PARAMETERS = 12,
  MHYP_COLLIDING_EIGENVALUES = 13,
  MHYP_DIMENSION_MISMATCH = 14,
  MHYP_PARSE_ERROR = 15,
  MHYP_INVALID_ARGUMENT = 16,
  MHYP_INTERNAL_ERROR = 99
} mhyp_status;

typedef enum mhyp_radius_class {
  MHYP_RADIUS_ENTIRE = 0,
  MHYP_RADIUS_UNIT_DISK = 1,
  MHYP_RADIUS_DIVERGENT_OUTSIDE_ZERO = 2
} mhyp_radius_class;

typedef enum mhyp_verdict {
  MHYP_VERDICT_SATISFIED = 0,
  MHYP_VERDICT_BOUNDARY = 1,
  MHYP_VERDICT_NOT_SATISFIED = 2
} mhyp_verdict;

typedef struct mhyp_matrix mhyp_matrix;
typedef struct mhyp_params mhyp_params;
typedef struct mhyp_solutions mhyp_solutions;
typedef struct mhyp_equation mhyp_equation;
typedef struct mhyp_reduction mhyp_reduction;

MHYP_API const char* mhyp_status_name(mhyp_status status);
MHYP_API const char* mhyp_last_error(void);
MHYP_API void mhyp_string_free(char* s);

/* ---- matrices ---------------------------------------------------------- */

MHYP_API mhyp_status mhyp_matrix_create(int dim, const double* entries, mhyp_matrix** out);
MHYP_API void mhyp_matrix_free(mhyp_matrix* m);
MHYP_API int mhyp_matrix_dim(const mhyp_matrix* m);
MHYP_API mhyp_status mhyp_matrix_entries(const mhyp_matrix* m, double* out);
MHYP_API mhyp_status mhyp_matrix_from_json(const char* text, mhyp_matrix** out);
MHYP_API mhyp_status mhyp_matrix_to_json(const mhyp_matrix* m, char** out);
MHYP_API mhyp_status mhyp_spectral_norm(const mhyp_matrix* m, double* out);
/* writes dim eigenvalues (2*dim doubles) */
MHYP_API mhyp_status mhyp_eigenvalues(const mhyp_matrix* m, double* out);
MHYP_API mhyp_status mhyp_pochhammer(double w_re, double w_im, unsigned long long j, double* out);

/* ---- parameters (A_1..A_n ; B_1..B_m) ---------------------------------- */

/* dim is only consulted when n == m == 0 */
MHYP_API mhyp_status mhyp_params_create(int dim, const mhyp_matrix* const* numerator, int n,
                                        const mhyp_matrix* const* denominator, int m,
                                        mhyp_params** out);
MHYP_API mhyp_status mhyp_params_from_json(const char* text, mhyp_params** out);
MHYP_API mhyp_status mhyp_params_to_json(const mhyp_params* p, char** out);
MHYP_API void mhyp_params_free(mhyp_params* p);
MHYP_API int mhyp_params_dim(const mhyp_params* p);
MHYP_API int mhyp_params_n(const mhyp_params* p);
MHYP_API int mhyp_params_m(const mhyp_params* p);

/* ---- evaluation -------------------------------------------------------- */

typedef struct mhyp_eval_options {
  double tol;         /* relative truncation tolerance, default 1e-12 */
  int max_terms;      /* default 10000 */
  int allow_boundary; /* permit |z| = 1 when n = m + 1 */
} mhyp_eval_options;

typedef struct mhyp_eval_info {
  int terms_used;
  double truncation_bound;
  int converged;
} mhyp_eval_info;

MHYP_API void mhyp_eval_options_default(mhyp_eval_options* opt);

/* value receives 2*r*r doubles; options and info may be NULL */
MHYP_API mhyp_status mhyp_eval(const mhyp_params* p, double z_re, double z_im,
                               const mhyp_eval_options* options, double* value,
                               mhyp_eval_info* info);
MHYP_API mhyp_status mhyp_eval_shifted(const mhyp_params* p, double p_re, double p_im,
                                       double z_re, double z_im,
                                       const mhyp_eval_options* options, double* value,
                                       mhyp_eval_info* info);
/* JSON report of an evaluation; shift may be NULL for the unshifted series */
MHYP_API mhyp_status mhyp_eval_json(const mhyp_params* p, const double* shift, double z_re,
                                    double z_im, const mhyp_eval_options* options, char** out);

/* ---- convergence ------------------------------------------------------- */

MHYP_API mhyp_radius_class mhyp_classify_radius(int n, int m);

typedef struct mhyp_certificate {
  int satisfied;
  mhyp_verdict verdict;
  double lambda;
  double delta_sum;
  double norm_sum;
  int all_hermitian;
  int pole_in_denominator;
} mhyp_certificate;

/* json may be NULL */
MHYP_API mhyp_status mhyp_certify(const mhyp_params* p, double tol, mhyp_certificate* out,
                                  char** json);
/* CSV trace J,partial_sum_norm,term_norm,weighted_term_norm; final_sum
 * (2*r*r doubles) may be NULL */
MHYP_API mhyp_status mhyp_boundary_probe_csv(const mhyp_params* p, double z_re, double z_im,
                                             long long max_terms, double lambda_prime,
                                             long long stride, char** csv, double* final_sum);

/* ---- series solutions -------------------------------------------------- */

/* writes min(total, capacity) roots (with repetition) and sets *count = total */
MHYP_API mhyp_status mhyp_indicial_roots(const mhyp_params* p, double* out, int capacity,
                                         int* count);
MHYP_API mhyp_status mhyp_analytic_basis(const mhyp_params* p, int truncation,
                                         mhyp_solutions** out);
MHYP_API mhyp_status mhyp_nonanalytic_solution(const mhyp_params* p, double beta_re,
                                               double beta_im, int truncation,
                                               mhyp_solutions** out);
MHYP_API mhyp_status mhyp_fundamental_set(const mhyp_params* p, int truncation,
                                          mhyp_solutions** out);
MHYP_API mhyp_status mhyp_solutions_from_json(const char* text, mhyp_solutions** out);
/* when p is non-NULL a "verification" block (recursion check at rel_tol) is added */
MHYP_API mhyp_status mhyp_solutions_to_json(const mhyp_solutions* s, const mhyp_params* p,
                                            double rel_tol, char** out);
MHYP_API int mhyp_solutions_count(const mhyp_solutions* s);
MHYP_API mhyp_status mhyp_solution_exponent(const mhyp_solutions* s, int index, double* out);
/* writes the r-vector value at z (2*r doubles) */
MHYP_API mhyp_status mhyp_solution_evaluate(const mhyp_solutions* s, int index, double z_re,
                                            double z_im, double* out);
/* passed (may be NULL) receives one flag per solution; *all_passed is 1 iff all pass */
MHYP_API mhyp_status mhyp_solutions_check(const mhyp_solutions* s, const mhyp_params* p,
                                          double rel_tol, int* passed, int* all_passed);
MHYP_API void mhyp_solutions_free(mhyp_solutions* s);

/* ---- second-order equations and reduction ------------------------------ */

MHYP_API mhyp_status mhyp_equation_create(const mhyp_matrix* C, const mhyp_matrix* U,
                                          const mhyp_matrix* V, mhyp_equation** out);
MHYP_API mhyp_status mhyp_equation_from_json(const char* text, mhyp_equation** out);
MHYP_API mhyp_status mhyp_equation_to_json(const mhyp_equation* eq, char** out);
MHYP_API int mhyp_equation_dim(const mhyp_equation* eq);
MHYP_API mhyp_status mhyp_spherical_example(int ell, double alpha, double beta, double k,
                                            mhyp_equation** out);
MHYP_API void mhyp_equation_free(mhyp_equation* eq);

MHYP_API mhyp_status mhyp_reduce(const mhyp_equation* eq, double tol, mhyp_reduction** out);
MHYP_API mhyp_status mhyp_reduce_spherical(int ell, double alpha, double beta, double k,
                                           double tol, mhyp_reduction** out);
MHYP_API int mhyp_reduction_is_reduced(const mhyp_reduction* r);
/* A and B receive 2*r*r doubles each; fails with INVALID_ARGUMENT if not reduced */
MHYP_API mhyp_status mhyp_reduction_matrices(const mhyp_reduction* r, double* A, double* B);
MHYP_API mhyp_status mhyp_reduction_to_json(const mhyp_reduction* r, char** out);
MHYP_API void mhyp_reduction_free(mhyp_reduction* r);

#ifdef __cplusplus
}
#endif

#endif /* MHYP_H */
