// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/series_eval.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace deltawv {

namespace {

constexpr uint32_t kDefaultTermBudget = 4u << 20;

// Incremental a_n z^n generator. Uses the rule's exact a_{n+1}/a_n ratio when
// available, otherwise one coefficient lookup plus one power update per term.
class TermStream {
public:
    TermStream(const PowerSeries& f, const Complex& z, prec_t w)
        : f_(f), z_(z), w_(w), term_(Complex::of_real(f.coeff(0, w))),
          zpow_(Complex::of_long(1, w)), ratio_mode_(f.term_ratio(0).has_value()) {}

    const Complex& term() const { return term_; }
    uint32_t index() const { return n_; }

    void advance() {
        if (ratio_mode_) {
            auto q = f_.term_ratio(n_);
            if (!q) raise(ErrorCode::kInternal, "coefficient ratio chain broke");
            term_ = mul_p(term_, z_, w_);
            Real qr = to_real(*q, w_);
            term_ = Complex(mul_p(term_.re, qr, w_), mul_p(term_.im, qr, w_));
        } else {
            zpow_ = mul_p(zpow_, z_, w_);
            Real c = f_.coeff(n_ + 1, w_);
            term_ = Complex(mul_p(zpow_.re, c, w_), mul_p(zpow_.im, c, w_));
        }
        ++n_;
    }

private:
    const PowerSeries& f_;
    Complex z_;
    prec_t w_;
    Complex term_;
    Complex zpow_;
    bool ratio_mode_;
    uint32_t n_ = 0;
};

enum class StopRel { kSum, kMaxTerm };

FixedPass sum_pass(const PowerSeries& f, const Complex& z, prec_t w, prec_t target_prec,
                   uint32_t max_terms, StopRel mode) {
    TermStream stream(f, z, w);
    Complex s(w);
    Real t_max(w);
    Real prev_abs = Real::nan(w);
    int run = 0;
    uint32_t n = 0;
    bool converged = false;
    for (; n < max_terms; ++n) {
        Complex term = stream.term();
        Real abs_t = term.abs();
        t_max = max(t_max, abs_t);
        s = add_p(s, term, w);
        const Real& ref = mode == StopRel::kSum ? s.abs() : t_max;
        bool small = abs_t.is_zero() || abs_t < mul_2si(ref, -(target_prec + 8));
        bool decay = !prev_abs.is_nan() &&
                     (abs_t.is_zero() || mul_2si(abs_t, 1) < prev_abs);
        if (small && decay) {
            if (++run >= 4) {
                converged = true;
                ++n;
                break;
            }
        } else {
            run = 0;
        }
        prev_abs = abs_t;
        stream.advance();
    }
    FixedPass out;
    out.value = std::move(s);
    out.terms_used = n;
    out.converged = converged;
    Real tail(w);
    if (converged) {
        stream.advance();
        tail = mul_2si(stream.term().abs(), 1); // twice the first omitted term
    }
    Real scale = max(t_max, out.value.abs());
    Real rounding = mul_2si(scale * Real::of_long(2l * n + 8, 64), 1 - long(w));
    out.abs_err = tail + rounding;
    out.max_term = std::move(t_max);
    return out;
}

EvalResult eval_poly_exact(const RationalPoly& p, const Complex& z, prec_t prec) {
    QComplex zq{z.re.to_mpq_exact(), z.im.to_mpq_exact()};
    QComplex v = p.eval(zq);
    Real re(prec), im(prec);
    int t1 = mpfr_set_q(re.raw(), v.re.get_mpq_t(), kRnd);
    int t2 = mpfr_set_q(im.raw(), v.im.get_mpq_t(), kRnd);
    Real tail(kMinPrec);
    if (t1 != 0 || t2 != 0)
        tail = mul_2si(max(abs(re), abs(im)), 2 - long(prec));
    return {Complex(std::move(re), std::move(im)), std::move(tail),
            static_cast<uint32_t>(p.degree() < 0 ? 1 : p.degree() + 1)};
}

} // namespace

EvalResult eval(const PowerSeries& f, const Complex& z, prec_t prec) {
    prec = clamp_prec(prec);
    if (!z.is_finite()) raise(ErrorCode::kInvalidArgument, "eval at non-finite point");
    if (const RationalPoly* p = f.as_polynomial()) return eval_poly_exact(*p, z, prec);

    prec_t w = prec + 40;
    for (int attempt = 0;; ++attempt) {
        FixedPass pass = sum_pass(f, z, w, prec, kDefaultTermBudget, StopRel::kSum);
        if (!pass.converged)
            raise(ErrorCode::kNonConvergence,
                  "series tail criterion not reached within term budget for " + f.name());
        Real value_scale = pass.value.abs();
        Real target = max(mul_2si(value_scale, -(prec + 2)),
                          mul_2si(pass.max_term, -(2 * long(prec) + 8)));
        if (pass.abs_err <= target) {
            Complex value = pass.value.round_to(prec);
            Real tail = pass.abs_err + mul_2si(value_scale, -long(prec));
            return {std::move(value), tail.round_to(kMinPrec), pass.terms_used};
        }
        if (attempt >= 12)
            raise(ErrorCode::kPrecisionExhausted,
                  "evaluation accuracy not reached for " + f.name());
        long deficit = pass.abs_err.ilog2_abs() - target.ilog2_abs();
        w += static_cast<prec_t>(std::max<long>(64, deficit + 32));
        w = clamp_prec(w);
    }
}

FixedPass eval_fixed(const PowerSeries& f, const Complex& z, prec_t work_prec,
                     uint32_t max_terms) {
    if (const RationalPoly* p = f.as_polynomial()) {
        EvalResult r = eval_poly_exact(*p, z, work_prec);
        FixedPass out;
        out.value = r.value;
        out.abs_err = r.tail_bound;
        out.max_term = r.value.abs();
        out.terms_used = r.terms_used;
        out.converged = true;
        return out;
    }
    return sum_pass(f, z, clamp_prec(work_prec), work_prec > 48 ? work_prec - 16 : 32,
                    max_terms, StopRel::kMaxTerm);
}

namespace {

EvalResult delta_poly_exact(const RationalPoly& p, unsigned n, const Complex& eta,
                            const Complex& z, prec_t prec) {
    QComplex zq{z.re.to_mpq_exact(), z.im.to_mpq_exact()};
    QComplex eq{eta.re.to_mpq_exact(), eta.im.to_mpq_exact()};
    QComplex acc{Rational(0), Rational(0)};
    for (unsigned j = 0; j <= n; ++j) {
        QComplex pt = zq + Rational(long(j)) * eq;
        QComplex term = Rational(binomial(n, j)) * p.eval(pt);
        if ((n - j) % 2 == 1)
            acc = acc - term;
        else
            acc = acc + term;
    }
    Real re(prec), im(prec);
    int t1 = mpfr_set_q(re.raw(), acc.re.get_mpq_t(), kRnd);
    int t2 = mpfr_set_q(im.raw(), acc.im.get_mpq_t(), kRnd);
    Real tail(kMinPrec);
    if (t1 != 0 || t2 != 0)
        tail = mul_2si(max(abs(re), abs(im)), 2 - long(prec));
    return {Complex(std::move(re), std::move(im)), std::move(tail),
            static_cast<uint32_t>(n + 1)};
}

} // namespace

EvalResult delta_exact(const PowerSeries& f, unsigned n, const Complex& eta,
                       const Complex& z, prec_t prec) {
    prec = clamp_prec(prec);
    if (n < 1) raise(ErrorCode::kInvalidArgument, "difference order must be >= 1");
    if (const RationalPoly* p = f.as_polynomial()) return delta_poly_exact(*p, n, eta, z, prec);

    double sigma = order_exponent(f);
    double zmag = std::min(z.abs().to_double(), 1e300);
    double cancel = double(n) * std::max(0.0, 1.0 - sigma) * std::log2(2.0 + zmag);
    prec_t w = prec + static_cast<prec_t>(std::ceil(cancel)) + 32;

    for (int attempt = 0;; ++attempt) {
        w = clamp_prec(w);
        std::vector<EvalResult> shifted;
        shifted.reserve(n + 1);
        uint32_t terms = 0;
        for (unsigned j = 0; j <= n; ++j) {
            Complex jeta = Real::of_long(long(j), w + 64) * eta;
            Complex zj = add_p(Complex(z.re.round_to(w + 64), z.im.round_to(w + 64)), jeta,
                               w + 64);
            shifted.push_back(eval(f, zj, w));
            terms += shifted.back().terms_used;
        }
        Complex acc(w + 16);
        Real err(64);
        Real mag_max(64);
        for (unsigned j = 0; j <= n; ++j) {
            Real c = to_real(Rational(binomial(n, j)), w + 16);
            Complex term = Complex(c * shifted[j].value.re, c * shifted[j].value.im);
            mag_max = max(mag_max, term.abs());
            err = err + c * shifted[j].tail_bound;
            if ((n - j) % 2 == 1)
                acc = acc - term;
            else
                acc = acc + term;
        }
        err = err + mul_2si(mag_max * Real::of_long(long(n) + 4, 64), 2 - long(w));
        Real value_scale = acc.abs();
        Real target = max(mul_2si(value_scale, -(prec + 2)),
                          mul_2si(mag_max, -(2 * long(prec) + 8)));
        if (err <= target) {
            Complex value = acc.round_to(prec);
            Real tail = err + mul_2si(value_scale, -long(prec));
            return {std::move(value), tail.round_to(kMinPrec), terms};
        }
        if (attempt >= 8)
            raise(ErrorCode::kPrecisionExhausted,
                  "difference of order " + std::to_string(n) + " for " + f.name() +
                      " lost all significant bits at the requested precision");
        long deficit = err.ilog2_abs() - target.ilog2_abs();
        w += static_cast<prec_t>(std::max<long>(64, deficit + 32));
    }
}

Complex log_derivative(const PowerSeries& f, unsigned k, const Complex& z, prec_t prec) {
    prec = clamp_prec(prec);
    if (k < 1) raise(ErrorCode::kInvalidArgument, "derivative order must be >= 1");
    EvalResult den = eval(f, z, prec + 16);
    if (den.value.abs() <= den.tail_bound)
        raise(ErrorCode::kDivisionAtZero,
              "value of " + f.name() + " is not resolved away from zero at the sample point");
    EvalResult num = eval(f.derivative(k), z, prec + 16);
    return (num.value / den.value).round_to(prec);
}

OrderEstimate order_from_coefficients(const PowerSeries& f, uint32_t n_max) {
    if (n_max < 16) raise(ErrorCode::kInvalidArgument, "order estimate needs n_max >= 16");
    uint32_t lo = std::max<uint32_t>(4, n_max / 4);

    struct Row {
        double n, y;
    };
    std::vector<Row> rows;
    rows.reserve(n_max - lo + 1);
    for (uint32_t n = lo; n <= n_max; ++n) {
        Real a = f.coeff(n, 96);
        if (a.is_zero()) continue;
        rows.push_back({double(n), -log(abs(a)).to_double()});
    }
    if (rows.size() < std::max<size_t>(8, (n_max - lo) / 4)) return {0.0, 0};

    auto fit_alpha = [](const std::vector<Row>& rs, size_t b, size_t e) -> double {
        // least squares for y = alpha*(n ln n) + beta*n + gamma
        long double m[3][4] = {};
        for (size_t i = b; i < e; ++i) {
            long double u = rs[i].n * std::log(rs[i].n);
            long double basis[3] = {u, (long double)rs[i].n, 1.0L};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
                m[r][3] += basis[r] * (long double)rs[i].y;
            }
        }
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::fabs((double)m[r][col]) > std::fabs((double)m[piv][col])) piv = r;
            std::swap(m[piv], m[col]);
            if (m[col][col] == 0.0L) return 0.0;
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                long double s = m[r][col] / m[col][col];
                for (int c = col; c < 4; ++c) m[r][c] -= s * m[col][c];
            }
        }
        return (double)(m[0][3] / m[0][0]);
    };

    auto sigma_of = [](double alpha) {
        if (!(alpha > 0.125)) return 8.0;
        return std::min(8.0, 1.0 / alpha);
    };

    double sigma = sigma_of(fit_alpha(rows, 0, rows.size()));

    int trend = 0;
    size_t mid = rows.size() / 2;
    if (mid >= 6 && rows.size() - mid >= 6) {
        double s1 = sigma_of(fit_alpha(rows, 0, mid));
        double s2 = sigma_of(fit_alpha(rows, mid, rows.size()));
        if (s2 > s1 * 1.03 + 0.01)
            trend = 1;
        else if (s2 < s1 / 1.03 - 0.01)
            trend = -1;
    }
    return {sigma, trend};
}

double order_exponent(const PowerSeries& f) {
    if (f.order_hint()) return f.order_hint()->get_d();
    return order_from_coefficients(f, 160).sigma;
}

} // namespace deltawv
