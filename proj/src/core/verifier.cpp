// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/verifier.hpp"

#include "core/errors.hpp"
#include "core/fitting.hpp"
#include "core/rational_poly.hpp"
#include "core/series_eval.hpp"
#include "core/stirling.hpp"
#include "core/wiman_valiron.hpp"

#include <cmath>
#include <utility>

namespace deltawv {

namespace {

struct BoundedValue {
    Complex value;
    Real err;
};

// num/den with first-order propagated error bounds.
BoundedValue bounded_ratio(const EvalResult& num, const EvalResult& den, prec_t prec,
                           const std::string& name) {
    Real dabs = den.value.abs();
    if (!(dabs > den.tail_bound + den.tail_bound))
        raise(ErrorCode::kDivisionAtZero,
              "denominator not resolved away from zero for " + name);
    Complex v = (num.value / den.value).round_to(prec);
    Real err = (num.tail_bound + v.abs() * den.tail_bound) / (dabs - den.tail_bound) +
               mul_2si(v.abs(), 2 - long(prec));
    return {std::move(v), std::move(err)};
}

QComplex qdiv(const QComplex& a, const QComplex& b) {
    Rational norm = b.re * b.re + b.im * b.im;
    QComplex c(a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im);
    return c / norm;
}

Real qc_abs(const QComplex& v, prec_t prec) {
    if (v.is_zero()) return Real(prec);
    Rational norm = v.re * v.re + v.im * v.im;
    return sqrt(to_real(norm, clamp_prec(prec + 8))).round_to(prec);
}

Real power_of(const Real& r, double expo) {
    return exp(Real::of_double(expo, 96) * log(r.round_to(96)));
}

void validate_expansion_args(unsigned n, unsigned N, const Complex& eta,
                             const std::vector<Real>& r_grid, double eps, prec_t prec) {
    if (n < 1) raise(ErrorCode::kInvalidArgument, "difference order must be >= 1");
    if (N < n) raise(ErrorCode::kInvalidArgument, "truncation order must be >= difference order");
    if (N > 512) raise(ErrorCode::kInvalidArgument, "truncation order above 512 is not supported");
    if (!(eps > 0.0) || !(eps <= 1.0))
        raise(ErrorCode::kInvalidArgument, "slack must be in (0, 1]");
    if (!eta.is_finite() || eta.is_zero())
        raise(ErrorCode::kInvalidArgument, "step must be finite and nonzero");
    if (r_grid.empty()) raise(ErrorCode::kInvalidArgument, "radius grid is empty");
    for (const Real& r : r_grid)
        if (r.sign() <= 0 || !r.is_finite())
            raise(ErrorCode::kInvalidArgument, "radii must be positive and finite");
    if (prec < kMinPrec) raise(ErrorCode::kInvalidArgument, "precision below 64 bits");
}

// Fit, exactness and verdict from the collected rows.
void finish_report(DecayReport& rep) {
    std::vector<std::pair<double, double>> pts;
    size_t live = 0;
    for (const DecayRow& row : rep.rows) {
        if (row.dropped) continue;
        ++live;
        if (row.usable)
            pts.push_back({std::log(row.r.to_double()), std::log(row.abs_err.to_double())});
    }
    double threshold = rep.claimed_exponent_conservative + rep.eps;
    if (rep.dropped_rows * 2 > rep.rows.size()) {
        rep.status = "UNRELIABLE";
        return;
    }
    if (live > 0 && pts.empty()) {
        // every surviving row agrees within evaluation error
        rep.status = "EXACT";
        rep.pass = true;
        rep.fit_r2 = 1.0;
        return;
    }
    if (pts.size() < 4) {
        rep.status = "UNRELIABLE";
        return;
    }
    auto [slope, r2] = fit_decay_exponent(pts);
    rep.fitted_slope = slope;
    rep.fit_r2 = r2;
    rep.pass = slope <= threshold && threshold < 0.0;
    rep.status = rep.pass ? "PASS" : "FAIL";
}

// Exact rational pipeline for polynomial inputs: floating radii and steps are
// dyadic, so both sides of the identity are exact and abs_err of 0 means 0.
void polynomial_rows(DecayReport& rep, const RationalPoly& p, const StirlingTable& table,
                     const std::vector<Real>& r_grid, double bound_expo) {
    QComplex etaq(rep.eta.re.to_mpq_exact(), rep.eta.im.to_mpq_exact());
    std::vector<QComplex> wq = expansion_weights_exact(table, rep.n, rep.N, etaq);

    std::vector<RationalPoly> dp{p};
    for (unsigned k = 1; k <= rep.N; ++k) dp.push_back(dp.back().derivative());

    std::vector<Rational> comb;
    for (unsigned j = 0; j <= rep.n; ++j) {
        Rational c(binomial(rep.n, j));
        if ((rep.n - j) % 2 == 1) c = -c;
        comb.push_back(std::move(c));
    }

    for (const Real& r : r_grid) {
        DecayRow row;
        row.r = r;
        QComplex zq(r.to_mpq_exact(), Rational(0));
        QComplex pz = p.eval(zq);
        if (pz.is_zero()) {
            row.dropped = true;
            row.drop_reason = "denominator vanishes at sample radius";
            ++rep.dropped_rows;
            rep.rows.push_back(std::move(row));
            continue;
        }
        QComplex delta;
        QComplex zs = zq;
        for (unsigned j = 0; j <= rep.n; ++j) {
            if (j > 0) zs = zs + etaq;
            delta = delta + comb[j] * p.eval(zs);
        }
        QComplex lhs = qdiv(delta, pz);
        QComplex acc;
        for (unsigned i = 0; i < wq.size(); ++i) acc = acc + wq[i] * dp[rep.n + i].eval(zq);
        QComplex rhs = qdiv(acc, pz);
        QComplex diff = lhs - rhs;

        row.lhs = lhs.to_complex(rep.prec);
        row.rhs = rhs.to_complex(rep.prec);
        row.abs_err = qc_abs(diff, rep.prec);
        row.noise_floor = Real(rep.prec);
        row.bound = power_of(r, bound_expo);
        row.within_bound = row.abs_err <= row.bound;
        row.usable = !diff.is_zero();
        rep.rows.push_back(std::move(row));
    }
}

void series_rows(DecayReport& rep, const PowerSeries& f, const StirlingTable& table,
                 const std::vector<Real>& r_grid, double bound_expo) {
    std::vector<Complex> wts = expansion_weights(table, rep.n, rep.N, rep.eta, rep.prec);
    std::vector<Real> wabs;
    wabs.reserve(wts.size());
    for (const Complex& c : wts) wabs.push_back(c.abs());

    std::vector<PowerSeries> dfs;
    dfs.reserve(wts.size());
    for (unsigned k = rep.n; k <= rep.N; ++k) dfs.push_back(f.derivative(k));

    const prec_t w = clamp_prec(rep.prec + 16);
    for (const Real& r : r_grid) {
        DecayRow row;
        row.r = r;
        if (f.excluded_at(r.to_double())) {
            row.dropped = true;
            row.drop_reason = "sample radius near a zero of " + f.name();
            ++rep.dropped_rows;
            rep.rows.push_back(std::move(row));
            continue;
        }
        try {
            Complex zc = Complex::of_real(r);
            EvalResult den = eval(f, zc, rep.prec);
            EvalResult num = delta_exact(f, rep.n, rep.eta, zc, rep.prec);
            BoundedValue lhs = bounded_ratio(num, den, rep.prec, f.name());

            Complex acc(w);
            Real rhs_err(w);
            Real abs_sum(w);
            for (unsigned i = 0; i < wts.size(); ++i) {
                EvalResult nk = eval(dfs[i], zc, rep.prec);
                BoundedValue ld = bounded_ratio(nk, den, rep.prec, f.name());
                Complex term = mul_p(wts[i], ld.value, w);
                abs_sum = abs_sum + term.abs();
                acc = add_p(acc, term, w);
                rhs_err = rhs_err + wabs[i] * ld.err;
            }
            rhs_err = rhs_err + mul_2si(abs_sum, 6 - long(w));

            row.lhs = lhs.value;
            row.rhs = acc.round_to(rep.prec);
            row.abs_err = (lhs.value - acc).abs();
            row.noise_floor = mul_2si(lhs.err + rhs_err, 3);
            row.bound = power_of(r, bound_expo);
            row.within_bound = row.abs_err <= row.bound;
            row.usable = row.abs_err > row.noise_floor;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::kPrecisionExhausted ||
                e.code() == ErrorCode::kDivisionAtZero) {
                row.dropped = true;
                row.drop_reason = e.what();
                ++rep.dropped_rows;
            } else {
                throw;
            }
        }
        rep.rows.push_back(std::move(row));
    }
}

} // namespace

DecayReport verify_expansion(const PowerSeries& f, unsigned n, unsigned N,
                             const Complex& eta, const std::vector<Real>& r_grid,
                             double eps, prec_t prec) {
    validate_expansion_args(n, N, eta, r_grid, eps, prec);

    DecayReport rep;
    rep.f_name = f.name();
    rep.n = n;
    rep.N = N;
    rep.eta = eta.round_to(prec);
    rep.eps = eps;
    rep.prec = prec;
    rep.sigma = order_exponent(f);
    rep.claimed_exponent_strong = double(n + N + 1) * (rep.sigma - 1.0);
    rep.claimed_exponent_conservative = double(N + 1) * (rep.sigma - 1.0);
    rep.rows.reserve(r_grid.size());

    double bound_expo = rep.claimed_exponent_conservative + eps;
    StirlingTable table(N);
    if (const RationalPoly* p = f.as_polynomial())
        polynomial_rows(rep, *p, table, r_grid, bound_expo);
    else
        series_rows(rep, f, table, r_grid, bound_expo);
    finish_report(rep);
    return rep;
}

DecayReport verify_first_difference(const PowerSeries& f, unsigned N, const Complex& eta,
                                    const std::vector<Real>& r_grid, double eps,
                                    prec_t prec) {
    return verify_expansion(f, 1, N, eta, r_grid, eps, prec);
}

WVDifferenceReport verify_wv_difference(const PowerSeries& f, unsigned k,
                                        const std::vector<Real>& r_grid, double eps,
                                        prec_t prec) {
    if (k < 1) raise(ErrorCode::kInvalidArgument, "difference order must be >= 1");
    if (!(eps > 0.0) || !(eps < 0.125))
        raise(ErrorCode::kInvalidArgument, "slack must be in (0, 1/8)");
    double sigma = f.order_hint() ? f.order_hint()->get_d() : order_exponent(f);
    if (!(sigma > 0.0) || !(sigma < 1.0))
        raise(ErrorCode::kInvalidArgument,
              "central-index comparison needs growth order strictly inside (0, 1)");

    WVDifferenceReport rep;
    rep.f_name = f.name();
    rep.k = k;
    rep.eps = eps;
    rep.pass = true;

    Complex one = Complex::of_long(1, prec);
    for (const Real& r : r_grid) {
        if (r.sign() <= 0 || !r.is_finite())
            raise(ErrorCode::kInvalidArgument, "radii must be positive and finite");
        if (f.excluded_at(r.to_double())) {
            ++rep.skipped_rows;
            continue;
        }
        WVDiffRow row;
        row.r = r;
        row.nu = maximal_term(f, r).nu;
        if (row.nu == 0)
            raise(ErrorCode::kDataError,
                  "central index is 0 at r = " + r.to_string(6) + ", prediction degenerate");

        Complex zc = Complex::of_real(r);
        EvalResult den = eval(f, zc, prec);
        EvalResult num = delta_exact(f, k, one, zc, prec);
        BoundedValue ratio = bounded_ratio(num, den, prec, f.name());
        row.delta_ratio = ratio.value;

        Real base = to_real(Rational(long(row.nu)), 96) / r.round_to(96);
        row.wv_prediction = pow_si(base, long(k));
        Complex rel = row.delta_ratio / Complex::of_real(row.wv_prediction.round_to(prec));
        row.rel_err = (rel - Complex::of_long(1, prec)).abs();
        row.bound = power_of(to_real(Rational(long(row.nu)), 96), -0.125 + eps);
        row.pass = row.rel_err <= row.bound;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    if (rep.rows.empty()) raise(ErrorCode::kInsufficientData, "no usable radii in the grid");
    return rep;
}

GammaReport gamma_counterexample(const std::vector<Real>& z_list, prec_t prec) {
    if (z_list.empty()) raise(ErrorCode::kInvalidArgument, "no sample points given");
    PowerSeries phi = PowerSeries::builtin("recip_gamma");

    GammaReport rep;
    rep.all_match = true;
    Complex one = Complex::of_long(1, prec);
    for (const Real& z : z_list) {
        if (!(z > Real::of_long(1, 64)))
            raise(ErrorCode::kInvalidArgument, "samples must satisfy z > 1");
        GammaRow row;
        row.z = z;

        Complex zc = Complex::of_real(z);
        EvalResult den = eval(phi, zc, prec);
        EvalResult num = delta_exact(phi, 1, one, zc, prec);
        BoundedValue ratio = bounded_ratio(num, den, prec, phi.name());
        row.delta_ratio = ratio.value;

        row.identity_value = Real::of_long(1, prec) / z.round_to(prec) - Real::of_long(1, prec);
        row.abs_diff = (row.delta_ratio - Complex::of_real(row.identity_value)).abs();
        row.combined_bound =
            mul_2si(ratio.err + mul_2si(abs(row.identity_value), 1 - long(prec)), 3);
        row.match = row.abs_diff <= row.combined_bound;
        rep.all_match = rep.all_match && row.match;

        row.nu = maximal_term(phi, z).nu;
        row.wv_prediction = to_real(Rational(long(row.nu)), 96) / z.round_to(96);
        Complex rel = row.delta_ratio / Complex::of_real(row.wv_prediction.round_to(prec));
        row.wv_rel_err = (rel - Complex::of_long(1, prec)).abs();
        row.wv_bound = power_of(to_real(Rational(long(row.nu)), 96), -0.125 + 0.05);
        row.wv_violated = row.wv_rel_err > row.wv_bound;
        rep.wv_failure_exhibited = rep.wv_failure_exhibited || row.wv_violated;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::pair<double, double> fit_decay_exponent(
    const std::vector<std::pair<double, double>>& log_r_log_err) {
    if (log_r_log_err.size() < 4)
        raise(ErrorCode::kInsufficientData, "decay fit needs at least 4 rows");
    std::vector<double> x, y;
    x.reserve(log_r_log_err.size());
    y.reserve(log_r_log_err.size());
    for (const auto& [lr, le] : log_r_log_err) {
        x.push_back(lr);
        y.push_back(le);
    }
    LineFit fit = fit_line(x, y);
    return {fit.slope, fit.r2};
}

} // namespace deltawv
