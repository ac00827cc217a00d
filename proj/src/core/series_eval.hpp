// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_SERIES_EVAL_HPP
#define DELTAWV_CORE_SERIES_EVAL_HPP

#include "core/complexval.hpp"
#include "core/power_series.hpp"

#include <cstdint>

namespace deltawv {

struct EvalResult {
    Complex value;
    Real tail_bound;     // absolute bound on |true - value|
    uint32_t terms_used = 0;
};

// Truncated power-series evaluation. Stops once |a_n z^n| drops below
// 2^(-prec-8) of the running sum while consecutive term ratios stay under
// 1/2 for four terms; the omitted tail is then bounded by twice the first
// omitted term. Rounding error is tracked against the largest term and the
// working precision is raised until the bound is resolved, so heavy interior
// cancellation (e.g. cos(sqrt(z)) at large z) is absorbed transparently.
EvalResult eval(const PowerSeries& f, const Complex& z, prec_t prec);

inline EvalResult eval(const PowerSeries& f, const Real& z, prec_t prec) {
    return eval(f, Complex::of_real(z), prec);
}

// One summation pass at a fixed working precision, no escalation. The
// absolute error bound may be large relative to the value; used for circle
// scans where only accuracy relative to the global maximum matters.
struct FixedPass {
    Complex value;
    Real abs_err;       // omitted tail + rounding, absolute
    Real max_term;      // largest |a_n z^n| seen
    uint32_t terms_used = 0;
    bool converged = false;
};
FixedPass eval_fixed(const PowerSeries& f, const Complex& z, prec_t work_prec,
                     uint32_t max_terms);

// n-th forward difference with step eta, computed from the exact binomial
// combination of n+1 shifted evaluations. Working precision starts at
// prec + ceil(n*max(0,1-sigma)*log2(2+|z|)) + 32 and is raised until the
// requested relative accuracy is met; kPrecisionExhausted after that.
// Polynomials are differenced in exact rational arithmetic instead.
EvalResult delta_exact(const PowerSeries& f, unsigned n, const Complex& eta,
                       const Complex& z, prec_t prec);

// f^(k)(z)/f(z). kDivisionAtZero when |f(z)| is not resolved away from zero.
Complex log_derivative(const PowerSeries& f, unsigned k, const Complex& z, prec_t prec);

struct OrderEstimate {
    double sigma = 0.0;
    int trend = 0; // -1 falling, 0 stable, +1 rising between window halves
};

// Growth order from coefficient decay: -log|a_n| ~ (1/sigma) n log n. Fitted
// over the upper 3/4 window with an n*log(n), n, 1 basis; zero coefficients
// are skipped, and a tail of zeros yields sigma = 0.
OrderEstimate order_from_coefficients(const PowerSeries& f, uint32_t n_max);

// order_hint when present, else a coefficient-decay estimate over n <= 160.
double order_exponent(const PowerSeries& f);

} // namespace deltawv

#endif
