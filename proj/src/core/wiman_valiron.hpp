// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_WIMAN_VALIRON_HPP
#define DELTAWV_CORE_WIMAN_VALIRON_HPP

#include "core/fitting.hpp"
#include "core/power_series.hpp"
#include "core/series_eval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace deltawv {

struct MaximalTerm {
    Real mu;                // max over n of |a_n| r^n
    uint32_t nu = 0;        // greatest attaining index
    uint32_t scanned = 0;   // indices examined
};

// Scans |a_n| r^n upward, keeping the greatest index within a relative
// 2^-96 band of the running maximum (exact ties break to the larger index).
// The scan runs to 3*argmax + 32 so plateaus cannot stop it early.
MaximalTerm maximal_term(const PowerSeries& f, const Real& r);

inline uint32_t central_index(const PowerSeries& f, const Real& r) {
    return maximal_term(f, r).nu;
}

// Maximum of |f| on the circle |z| = r. Positive-coefficient series reduce
// to the positive axis; otherwise a sampled half-circle scan (coefficients
// are real, so |f| is conjugate-symmetric) plus golden-section refinement.
// Accuracy is a few units of 2^-40 relative, enough for growth fits.
Real max_modulus(const PowerSeries& f, const Real& r, unsigned circle_samples = 256,
                 prec_t prec = 160);

struct WVSample {
    Real r;
    Real mu;
    uint32_t nu = 0;
    Real M;
};

struct WVProfile {
    std::string f_name;
    std::vector<WVSample> samples;
    double order_fit = 0.0;
    double order_r2 = 0.0;
};

WVProfile wv_profile(const PowerSeries& f, const std::vector<Real>& r_grid,
                     unsigned circle_samples = 256, prec_t prec = 160);

// Least-squares slope of log nu(r) against log r; 0 when nu vanishes on the
// whole grid. Grid should span at least 3 decades with 5 or more points.
double order_from_central_index(const PowerSeries& f, const std::vector<Real>& r_grid);

struct PointwiseRow {
    Real r;
    bool excluded = false;        // zero-avoidance policy skipped this radius
    Real lhs;                     // |f^(k)(r)/f(r)|
    Real rhs;                     // r^{k(sigma-1)+eps}
    std::vector<Real> shift_ratios; // |f(r+t)/f(r)| at t = 0, 1/4, 1/2, 3/4, 1
    Real shift_lo;                // exp(-r^{sigma-1+eps})
    Real shift_hi;                // exp(+r^{sigma-1+eps})
    bool pass = false;
};

// Log-derivative bound |f^(k)(r)/f(r)| <= r^{k(sigma-1)+eps} and the shifted
// ratio band exp(-r^{sigma-1+eps}) <= |f(r+t)/f(r)| <= exp(r^{sigma-1+eps})
// at five t samples, per radius. Requires an order hint below 1.
std::vector<PointwiseRow> check_pointwise_bounds(const PowerSeries& f, unsigned k,
                                                 double eps,
                                                 const std::vector<Real>& r_grid,
                                                 prec_t prec);

// log M(r) ~ L r^chi over the grid, M from max_modulus.
GrowthFit growth_fit_series(const PowerSeries& f, const std::vector<Real>& r_grid,
                            unsigned circle_samples = 256, prec_t prec = 160);

} // namespace deltawv

#endif
