// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/fitting.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace deltawv {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) raise(ErrorCode::kInvalidArgument, "mismatched fit arrays");
    size_t n = x.size();
    if (n < 2) raise(ErrorCode::kInsufficientData, "line fit needs at least 2 points");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) raise(ErrorCode::kInsufficientData, "degenerate fit: all x equal");
    LineFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.n = n;
    if (syy == 0.0) {
        out.r2 = 1.0;
    } else {
        double ss_res = syy - sxy * sxy / sxx;
        out.r2 = 1.0 - ss_res / syy;
    }
    return out;
}

GrowthFit growth_fit_from_log_m(const std::vector<std::pair<Real, Real>>& samples) {
    if (samples.size() < 5)
        raise(ErrorCode::kInsufficientData, "growth fit needs at least 5 radii");
    GrowthFit out;
    out.samples = samples;

    std::vector<double> lx, lly;
    double prev = -1.0;
    for (const auto& [r, logm] : samples) {
        double lm = logm.to_double();
        if (!(lm > 0.0))
            raise(ErrorCode::kDataError, "growth too small to fit: log M(r) must be positive");
        if (!(lm > prev))
            raise(ErrorCode::kDataError, "log M(r) is not strictly increasing over the grid");
        prev = lm;
        lx.push_back(std::log(r.to_double()));
        lly.push_back(std::log(lm));
    }

    LineFit fit = fit_line(lx, lly);
    out.chi_fit = fit.slope;
    out.fit_r2 = fit.r2;

    // bucket the scale factors by decade to expose drift the global fit hides
    std::vector<int> decades;
    std::vector<double> scale;
    double total = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        double r = samples[i].first.to_double();
        double li = samples[i].second.to_double() / std::exp(out.chi_fit * std::log(r));
        scale.push_back(li);
        total += li;
        decades.push_back(int(std::floor(std::log10(r) + 1e-9)));
    }
    out.L_fit = total / double(scale.size());

    int d = decades.front();
    double bucket_sum = 0.0;
    unsigned bucket_n = 0;
    for (size_t i = 0; i <= scale.size(); ++i) {
        if (i == scale.size() || decades[i] != d) {
            out.per_decade_L.push_back(bucket_sum / double(bucket_n));
            if (i == scale.size()) break;
            d = decades[i];
            bucket_sum = 0.0;
            bucket_n = 0;
        }
        bucket_sum += scale[i];
        ++bucket_n;
    }
    double lo = out.per_decade_L.front(), hi = lo, mean = 0.0;
    for (double v : out.per_decade_L) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= double(out.per_decade_L.size());
    out.per_decade_spread = (hi - lo) / mean;
    return out;
}

// Endpoints are exact; interior points are computed at a fixed 128 bits so
// report radii are identical from run to run.
std::vector<Real> geometric_grid(double rmin, double rmax, unsigned points) {
    if (!std::isfinite(rmin) || !std::isfinite(rmax) || !(rmin > 0) || !(rmax >= rmin))
        raise(ErrorCode::kInvalidArgument, "radius grid requires 0 < rmin <= rmax");
    if (points < 1 || points > 4096)
        raise(ErrorCode::kInvalidArgument, "radius grid takes 1..4096 points");
    if (points > 1 && !(rmax > rmin))
        raise(ErrorCode::kInvalidArgument, "more than one grid point requires rmax > rmin");
    const prec_t gp = 128;
    std::vector<Real> grid;
    grid.reserve(points);
    Real lo = Real::of_double(rmin, gp);
    grid.push_back(lo);
    if (points == 1) return grid;
    Real llo = log(lo);
    Real step = (log(Real::of_double(rmax, gp)) - llo) / Real::of_long(long(points) - 1, gp);
    for (unsigned i = 1; i + 1 < points; ++i)
        grid.push_back(exp(llo + Real::of_long(long(i), gp) * step));
    grid.push_back(Real::of_double(rmax, gp));
    return grid;
}

} // namespace deltawv
