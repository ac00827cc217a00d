// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_FITTING_HPP
#define DELTAWV_CORE_FITTING_HPP

#include "core/real.hpp"

#include <cstddef>
#include <vector>

namespace deltawv {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    size_t n = 0;
};

// Ordinary least squares y = slope*x + intercept. kInsufficientData when
// fewer than 2 points or when all x coincide.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// points values spaced geometrically over [rmin, rmax], ascending.
// Single-point grids collapse to {rmin}.
std::vector<Real> geometric_grid(double rmin, double rmax, unsigned points);

struct GrowthFit {
    double chi_fit = 0.0;
    double L_fit = 0.0;
    double fit_r2 = 0.0;
    std::vector<std::pair<Real, Real>> samples; // (r, log M(r)) ascending in r
    std::vector<double> per_decade_L;           // bucket means by floor(log10 r)
    double per_decade_spread = 0.0;             // (max - min) / mean over buckets
};

// log M(r) ~ L r^chi: chi from the slope of log log M against log r, then
// L_i = log M_i / r_i^chi averaged, with per-decade bucket means exposing
// drift. Needs at least 5 samples with log M positive and strictly
// increasing; kDataError otherwise.
GrowthFit growth_fit_from_log_m(const std::vector<std::pair<Real, Real>>& samples);

} // namespace deltawv

#endif
