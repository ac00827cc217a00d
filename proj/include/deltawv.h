/* Copyright (c) 2026 The deltawv authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the deltawv library: entire-function power series, their
 * finite differences and log-derivative expansions, central-index growth
 * profiles, and polynomial-coefficient difference equations solved in the
 * binomial basis.
 *
 * Conventions:
 *   - Every function returning dwv_status yields DWV_OK on success; any
 *     other value is an error and the output parameters are untouched.
 *     dwv_last_error() returns a thread-local message for the most recent
 *     failure on the calling thread.
 *   - Real scalars cross the boundary as decimal strings ("1.5", "-7/2" is
 *     accepted on input where noted, "4.356e44"), never as doubles, so no
 *     precision is lost. Output strings are heap-allocated; release them
 *     with dwv_string_free.
 *   - Structured results (reports, profiles, fits) are JSON documents in
 *     the same decimal-string convention.
 *   - prec parameters are binary precisions (bits); values below 64 are
 *     raised to 64.
 */

#ifndef DELTAWV_H
#define DELTAWV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dwv_status {
    DWV_OK = 0,
    DWV_ERR_INVALID_ARGUMENT = 1,
    DWV_ERR_UNKNOWN_NAME = 2,
    DWV_ERR_PARSE = 3,
    DWV_ERR_VALIDATION = 4,
    DWV_ERR_NON_CONVERGENCE = 5,
    DWV_ERR_PRECISION_EXHAUSTED = 6,
    DWV_ERR_DIVISION_AT_ZERO = 7,
    DWV_ERR_INSUFFICIENT_DATA = 8,
    DWV_ERR_NEEDS_MORE_TERMS = 9,
    DWV_ERR_MINIMAL_SOLUTION_NOT_FOUND = 10,
    DWV_ERR_DATA = 11,
    DWV_ERR_IO = 12,
    DWV_ERR_INTERNAL = 13,
    DWV_ERR_OUT_OF_MEMORY = 14
} dwv_status;

typedef struct dwv_series dwv_series;     /* entire function as a power series */
typedef struct dwv_stirling dwv_stirling; /* set-partition count table */
typedef struct dwv_equation dwv_equation; /* polynomial-coefficient difference equation */
typedef struct dwv_solution dwv_solution; /* binomial-basis coefficient sequence */

/* Library version, static storage. */
const char* dwv_version(void);

/* Message for the last error on this thread; empty string if none. */
const char* dwv_last_error(void);

/* Release any string returned through a char** output. NULL is ignored. */
void dwv_string_free(char* s);

/* ---- power series ----------------------------------------------------- */

/* Known names: bessel_i0_sqrt, cos_sqrt, exp, recip_gamma, and
 * poly:<c0,c1,...> with exact rational entries. */
dwv_status dwv_series_builtin(const char* name, dwv_series** out);

/* JSON array of decimal strings, ascending degree. */
dwv_status dwv_series_from_coefficient_file(const char* path, dwv_series** out);

void dwv_series_free(dwv_series* s);

/* {"re","im","abs_err_bound","terms"}: f(z) with a bound on the truncation
 * and rounding error. z components are decimal strings. */
dwv_status dwv_series_eval(const dwv_series* s, const char* z_re, const char* z_im,
                           uint64_t prec, char** value_json);

/* n-th forward difference with step eta at z, same result shape. */
dwv_status dwv_series_delta(const dwv_series* s, unsigned n, const char* eta_re,
                            const char* eta_im, const char* z_re, const char* z_im,
                            uint64_t prec, char** value_json);

/* f^(k)(z)/f(z) as {"re","im"}. */
dwv_status dwv_series_log_derivative(const dwv_series* s, unsigned k, const char* z_re,
                                     const char* z_im, uint64_t prec, char** value_json);

/* Growth order: declared value when the series carries one, otherwise a
 * coefficient-decay estimate. */
dwv_status dwv_series_order(const dwv_series* s, double* sigma);

/* Index of the largest term |a_n| r^n (greatest index on ties). */
dwv_status dwv_series_central_index(const dwv_series* s, const char* r, uint32_t* nu);

/* max |f| on |z| = r, as a decimal string. */
dwv_status dwv_series_max_modulus(const dwv_series* s, const char* r,
                                  unsigned circle_samples, uint64_t prec, char** value);

/* ---- set-partition table ---------------------------------------------- */

dwv_status dwv_stirling_create(unsigned n_max, dwv_stirling** out);
void dwv_stirling_free(dwv_stirling* t);

/* S(n,m) as a decimal integer string. */
dwv_status dwv_stirling_entry(const dwv_stirling* t, unsigned n, unsigned m, char** decimal);

/* Row sum (count of all set partitions of n elements). */
dwv_status dwv_stirling_row_sum(const dwv_stirling* t, unsigned n, char** decimal);

/* x^n == sum_m S(n,m) x(x-1)...(x-m+1), exact check; *ok is 1 or 0. */
dwv_status dwv_stirling_check_generating(const dwv_stirling* t, unsigned n, int* ok);

/* C(m,r) S(n,m) == sum_k C(n,k) S(n-k,r) S(k,m-r), exact check. */
dwv_status dwv_stirling_check_convolution(const dwv_stirling* t, unsigned n, unsigned m,
                                          unsigned r, int* ok);

/* JSON array [{"k","weight":{"re","im"}}] of the factors weighting k-th
 * log-derivative samples in an n-th difference quotient, k = n..k_max. */
dwv_status dwv_stirling_weights(const dwv_stirling* t, unsigned n, unsigned k_max,
                                const char* eta_re, const char* eta_im, uint64_t prec,
                                char** json_array);

/* ---- expansion and growth checks -------------------------------------- */

/* Truncation-error decay of the n-th difference quotient against its
 * log-derivative expansion over a geometric radius grid. */
dwv_status dwv_verify_expansion(const dwv_series* s, unsigned n, unsigned N,
                                const char* eta_re, const char* eta_im, double rmin,
                                double rmax, unsigned points, double eps, uint64_t prec,
                                char** report_json);

/* n = 1 specialization, same report shape. */
dwv_status dwv_verify_first_difference(const dwv_series* s, unsigned N, const char* eta_re,
                                       const char* eta_im, double rmin, double rmax,
                                       unsigned points, double eps, uint64_t prec,
                                       char** report_json);

/* Maximal term, central index, and circle maximum over a geometric grid,
 * with the fitted slope of log nu against log r. */
dwv_status dwv_wv_profile(const dwv_series* s, double rmin, double rmax, unsigned points,
                          unsigned circle_samples, uint64_t prec, char** report_json);

/* Pointwise log-derivative bound and shifted-ratio band per radius. */
dwv_status dwv_check_pointwise(const dwv_series* s, unsigned k, double eps, double rmin,
                               double rmax, unsigned points, uint64_t prec,
                               char** report_json);

/* Difference quotient against the (nu/r)^k prediction per radius. */
dwv_status dwv_verify_wv_difference(const dwv_series* s, unsigned k, double rmin,
                                    double rmax, unsigned points, double eps,
                                    uint64_t prec, char** report_json);

/* First-difference quotient of 1/Gamma against 1/z - 1 and against the
 * central-index prediction band, at the given sample points (decimal
 * strings, each > 1). */
dwv_status dwv_gamma_counterexample(const char* const* z_values, size_t n_z,
                                    uint64_t prec, char** report_json);

/* log M(r) ~ L r^chi fit over a geometric grid. */
dwv_status dwv_growth_fit_series(const dwv_series* s, double rmin, double rmax,
                                 unsigned points, unsigned circle_samples, uint64_t prec,
                                 char** report_json);

/* ---- difference equations --------------------------------------------- */

/* {"coeffs": [[...a_0...], ...], "eta": 1, "name": "..."} with integer or
 * exact-string entries. */
dwv_status dwv_equation_parse(const char* json_text, const char* name, dwv_equation** out);
dwv_status dwv_equation_parse_file(const char* path, dwv_equation** out);
void dwv_equation_free(dwv_equation* eq);

/* Degree diagram: points, concave-from-above hull segments, and the
 * predicted entire-solution orders. */
dwv_status dwv_equation_polygon(const dwv_equation* eq, char** report_json);

/* Image of the equation on binomial-basis coefficient sequences:
 * {"span","terms":[{"t","poly"}]}. */
dwv_status dwv_equation_recurrence(const dwv_equation* eq, char** report_json);

/* Minimal-growth coefficient sequence b_0..b_{terms-1}. margin 0 selects
 * the default downward-run margin. */
dwv_status dwv_equation_solve(const dwv_equation* eq, unsigned terms, unsigned margin,
                              uint64_t prec, dwv_solution** out);

void dwv_solution_free(dwv_solution* sol);

/* Summary without the coefficient list:
 * {"terms","first_free_index","subspace_dim","prec","stability"}. */
dwv_status dwv_solution_info(const dwv_solution* sol, char** report_json);

dwv_status dwv_solution_size(const dwv_solution* sol, size_t* n);

/* b_index as a decimal string. */
dwv_status dwv_solution_coefficient(const dwv_solution* sol, size_t index, char** decimal);

/* sum_m b_m C(z,m) as {"re","im","abs_err_bound","terms"}. */
dwv_status dwv_solution_eval(const dwv_solution* sol, const char* z_re, const char* z_im,
                             uint64_t prec, char** value_json);

/* max |f| over the circle of radius r (offset by 1/2), decimal string. */
dwv_status dwv_solution_max_modulus(const dwv_solution* sol, const char* r,
                                    uint64_t scan_prec, char** value);

/* log M(r) ~ L r^chi fit for the basis solution. */
dwv_status dwv_solution_growth_fit(const dwv_solution* sol, double rmin, double rmax,
                                   unsigned points, uint64_t scan_prec, char** report_json);

/* Polygon prediction, minimal solve, growth fit, and residual spot checks
 * chained into one verdict. */
dwv_status dwv_verify_growth(const dwv_equation* eq, unsigned terms, double rmin,
                             double rmax, unsigned points, uint64_t prec,
                             char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DELTAWV_H */
