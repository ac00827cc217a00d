// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/wiman_valiron.hpp"

#include "core/errors.hpp"
#include "core/fitting.hpp"

#include <algorithm>
#include <cmath>

namespace deltawv {

namespace {
constexpr prec_t kScanPrec = 128;
constexpr uint32_t kScanBudget = 16u << 20;
} // namespace

MaximalTerm maximal_term(const PowerSeries& f, const Real& r) {
    if (r.sign() <= 0 || !r.is_finite())
        raise(ErrorCode::kInvalidArgument, "maximal term needs r > 0");
    const prec_t w = kScanPrec;
    Real rr = r.round_to(w);
    bool ratio_mode = f.term_ratio(0).has_value();

    Real term = abs(f.coeff(0, w));
    Real rpow = Real::of_long(1, w);
    Real best = term;
    uint32_t best_n = 0;
    uint32_t n = 0;
    while (n < kScanBudget) {
        if (n >= 3u * best_n + 32u) break;
        ++n;
        if (ratio_mode) {
            auto q = f.term_ratio(n - 1);
            if (!q) raise(ErrorCode::kInternal, "coefficient ratio chain broke");
            term = term * abs(to_real(*q, w)) * rr;
        } else {
            rpow = rpow * rr;
            term = abs(f.coeff(n, w)) * rpow;
        }
        // greatest index within a 2^-96 relative band of the maximum wins
        Real band = mul_2si(best, -96);
        if (term > best + band) {
            best = term;
            best_n = n;
        } else if (!(term < best - band) && !term.is_zero()) {
            best_n = n;
        }
    }
    if (n >= kScanBudget)
        raise(ErrorCode::kNonConvergence,
              "no decay of |a_n| r^n within term budget for " + f.name());
    return {std::move(best), best_n, n};
}

namespace {

Real circle_abs(const PowerSeries& f, const Real& r, double theta, prec_t w) {
    Complex z = r.round_to(w) * unit_circle(Real::of_double(theta, w), w);
    FixedPass p = eval_fixed(f, z, w, kScanBudget);
    if (!p.converged)
        raise(ErrorCode::kNonConvergence,
              "circle sample did not converge for " + f.name());
    return p.value.abs();
}

} // namespace

Real max_modulus(const PowerSeries& f, const Real& r, unsigned circle_samples,
                 prec_t prec) {
    if (r.sign() <= 0 || !r.is_finite())
        raise(ErrorCode::kInvalidArgument, "maximum modulus needs r > 0");
    if (circle_samples < 1)
        raise(ErrorCode::kInvalidArgument, "need at least one circle sample");
    if (f.nonneg_coeffs())
        return eval(f, r, prec).value.abs().round_to(prec);

    const prec_t w = clamp_prec(prec + 32);
    // coefficients are real, |f| is symmetric about the real axis
    unsigned count = std::max(3u, circle_samples / 2 + 1);
    const double pi = 3.14159265358979323846;
    double best_theta = 0.0;
    Real best = circle_abs(f, r, 0.0, w);
    for (unsigned j = 1; j < count; ++j) {
        double th = pi * double(j) / double(count - 1);
        Real v = circle_abs(f, r, th, w);
        if (v > best) {
            best = v;
            best_theta = th;
        }
    }
    double step = pi / double(count - 1);
    double a = std::max(0.0, best_theta - step);
    double b = std::min(pi, best_theta + step);
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    Real fc = circle_abs(f, r, c, w), fd = circle_abs(f, r, d, w);
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = circle_abs(f, r, c, w);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = circle_abs(f, r, d, w);
        }
    }
    best = max(best, max(fc, fd));
    return best.round_to(prec);
}

namespace {

double fit_nu_slope(const std::vector<WVSample>& samples, double* r2_out) {
    std::vector<double> lx, ly;
    for (const WVSample& s : samples) {
        if (s.nu == 0) continue;
        lx.push_back(std::log(s.r.to_double()));
        ly.push_back(std::log(double(s.nu)));
    }
    if (lx.size() < 2) {
        if (r2_out) *r2_out = 1.0;
        return 0.0;
    }
    LineFit fit = fit_line(lx, ly);
    if (r2_out) *r2_out = fit.r2;
    return fit.slope;
}

} // namespace

WVProfile wv_profile(const PowerSeries& f, const std::vector<Real>& r_grid,
                     unsigned circle_samples, prec_t prec) {
    WVProfile out;
    out.f_name = f.name();
    out.samples.reserve(r_grid.size());
    for (const Real& r : r_grid) {
        MaximalTerm mt = maximal_term(f, r);
        WVSample s{r, std::move(mt.mu), mt.nu, max_modulus(f, r, circle_samples, prec)};
        out.samples.push_back(std::move(s));
    }
    out.order_fit = fit_nu_slope(out.samples, &out.order_r2);
    return out;
}

double order_from_central_index(const PowerSeries& f, const std::vector<Real>& r_grid) {
    if (r_grid.size() < 5)
        raise(ErrorCode::kInvalidArgument, "order fit needs a grid of at least 5 radii");
    std::vector<WVSample> samples;
    samples.reserve(r_grid.size());
    for (const Real& r : r_grid) {
        MaximalTerm mt = maximal_term(f, r);
        samples.push_back({r, std::move(mt.mu), mt.nu, Real(kMinPrec)});
    }
    return fit_nu_slope(samples, nullptr);
}

std::vector<PointwiseRow> check_pointwise_bounds(const PowerSeries& f, unsigned k,
                                                 double eps,
                                                 const std::vector<Real>& r_grid,
                                                 prec_t prec) {
    if (k < 1) raise(ErrorCode::kInvalidArgument, "bound check needs k >= 1");
    if (!f.order_hint())
        raise(ErrorCode::kInvalidArgument, "bound check needs an order hint below 1");
    double sigma = f.order_hint()->get_d();
    if (!(sigma < 1.0))
        raise(ErrorCode::kInvalidArgument, "bound check needs an order hint below 1");

    std::vector<PointwiseRow> rows;
    rows.reserve(r_grid.size());
    for (const Real& r : r_grid) {
        PointwiseRow row;
        row.r = r;
        if (f.excluded_at(r.to_double())) {
            row.excluded = true;
            rows.push_back(std::move(row));
            continue;
        }
        Real logr = log(r.round_to(96));
        row.lhs = log_derivative(f, k, Complex::of_real(r), prec).abs();
        row.rhs = exp(Real::of_double(double(k) * (sigma - 1.0) + eps, 96) * logr);
        Real band_exp = exp(Real::of_double(sigma - 1.0 + eps, 96) * logr);
        row.shift_hi = exp(band_exp);
        row.shift_lo = exp(-band_exp);

        EvalResult base = eval(f, r, prec);
        if (base.value.abs() <= base.tail_bound)
            raise(ErrorCode::kDivisionAtZero,
                  "sample radius too close to a zero of " + f.name());
        bool ok = row.lhs <= row.rhs;
        for (int j = 0; j <= 4; ++j) {
            Real zt = r + Real::of_double(0.25 * j, 96);
            Real ratio = eval(f, zt, prec).value.abs() / base.value.abs();
            ok = ok && row.shift_lo <= ratio && ratio <= row.shift_hi;
            row.shift_ratios.push_back(std::move(ratio));
        }
        row.pass = ok;
        rows.push_back(std::move(row));
    }
    return rows;
}

GrowthFit growth_fit_series(const PowerSeries& f, const std::vector<Real>& r_grid,
                            unsigned circle_samples, prec_t prec) {
    std::vector<std::pair<Real, Real>> samples;
    samples.reserve(r_grid.size());
    for (const Real& r : r_grid)
        samples.push_back({r, log(max_modulus(f, r, circle_samples, prec))});
    return growth_fit_from_log_m(samples);
}

} // namespace deltawv
