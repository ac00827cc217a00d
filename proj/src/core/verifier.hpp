// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_VERIFIER_HPP
#define DELTAWV_CORE_VERIFIER_HPP

#include "core/complexval.hpp"
#include "core/power_series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace deltawv {

struct DecayRow {
    Real r;
    Complex lhs;          // delta_exact(f,n,eta,r) / f(r)
    Complex rhs;          // truncated log-derivative expansion
    Real abs_err;         // |lhs - rhs|
    Real noise_floor;     // 8x combined evaluation error bounds
    Real bound;           // r^{(N+1)(sigma-1)+eps}
    bool within_bound = false;
    bool usable = false;  // above the noise floor, enters the slope fit
    bool dropped = false;
    std::string drop_reason;
};

struct DecayReport {
    std::string f_name;
    unsigned n = 1;
    unsigned N = 1;
    Complex eta;
    double eps = 0.05;
    prec_t prec = 256;
    double sigma = 0.0;
    std::vector<DecayRow> rows;
    double fitted_slope = 0.0;
    double fit_r2 = 0.0;
    double claimed_exponent_strong = 0.0;       // (n+N+1)(sigma-1)
    double claimed_exponent_conservative = 0.0; // (N+1)(sigma-1)
    size_t dropped_rows = 0;
    bool pass = false;
    // EXACT: every row vanished within evaluation error (polynomial inputs).
    // UNRELIABLE: more than half the grid rows were dropped, or fewer than 4
    // usable rows survive for the slope fit.
    std::string status;
};

// Truncation-error decay of the n-th difference quotient against its
// log-derivative expansion up to order N, with the decay slope fitted over
// the radius grid. PASS requires the fitted slope to reach the conservative
// exponent (N+1)(sigma-1)+eps and that exponent to be negative (a series
// of order 1 claims no decay and cannot pass).
DecayReport verify_expansion(const PowerSeries& f, unsigned n, unsigned N,
                             const Complex& eta, const std::vector<Real>& r_grid,
                             double eps, prec_t prec);

// n = 1 specialization, same pipeline (rows are bit-identical to
// verify_expansion at equal settings).
DecayReport verify_first_difference(const PowerSeries& f, unsigned N, const Complex& eta,
                                    const std::vector<Real>& r_grid, double eps,
                                    prec_t prec);

struct WVDiffRow {
    Real r;
    uint32_t nu = 0;
    Complex delta_ratio;  // Delta^k f(r) / f(r), unit shift
    Real wv_prediction;   // (nu/r)^k
    Real rel_err;         // |delta_ratio / prediction - 1|
    Real bound;           // nu^{-1/8+eps}
    bool pass = false;
};

struct WVDifferenceReport {
    std::string f_name;
    unsigned k = 1;
    double eps = 0.05;
    std::vector<WVDiffRow> rows;
    size_t skipped_rows = 0; // radii inside the zero-exclusion window
    bool pass = false;
};

// Sharp difference analogue of the central-index estimate on the positive
// axis: Delta^k f / f stays within nu^{-1/8+eps} of (nu/r)^k. Requires an
// order hint strictly inside (0,1). Radii inside the zero-exclusion window
// are skipped and counted.
WVDifferenceReport verify_wv_difference(const PowerSeries& f, unsigned k,
                                        const std::vector<Real>& r_grid, double eps,
                                        prec_t prec);

struct GammaRow {
    Real z;
    Complex delta_ratio;   // (Delta Phi)(z) / Phi(z) for Phi = 1/Gamma
    Real identity_value;   // 1/z - 1
    Real abs_diff;
    Real combined_bound;   // 8x evaluation error bounds
    bool match = false;
    uint32_t nu = 0;
    Real wv_prediction;    // nu/z
    Real wv_rel_err;
    Real wv_bound;         // nu^{-1/8+0.05}
    bool wv_violated = false;
};

struct GammaReport {
    std::vector<GammaRow> rows;
    bool all_match = false;
    bool wv_failure_exhibited = false; // the order-1 series escapes the band
};

// First-difference quotient of 1/Gamma equals 1/z - 1 exactly; the same
// quotient escapes the (nu/r) prediction band, which is the order-1
// sharpness witness.
GammaReport gamma_counterexample(const std::vector<Real>& z_list, prec_t prec);

// Least squares of log(err) against log(r). kInsufficientData under 4 rows.
// Returns (slope, r2).
std::pair<double, double> fit_decay_exponent(
    const std::vector<std::pair<double, double>>& log_r_log_err);

} // namespace deltawv

#endif
