// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/newton_series.hpp"

#include "core/errors.hpp"

#include <algorithm>

namespace deltawv {

NewtonEval eval_newton_fixed(const std::vector<Real>& b, const Complex& z,
                             prec_t work_prec) {
    const prec_t w = clamp_prec(work_prec);
    if (!z.is_finite()) raise(ErrorCode::kInvalidArgument, "evaluation point must be finite");

    Complex zw = z.round_to(w);
    Complex basis = Complex::of_long(1, w);
    Complex sum(w);
    Real tmax(w);
    Real prev_mag = Real::nan(64);
    uint32_t small_run = 0;

    NewtonEval out;
    bool stopped = false;
    uint32_t m = 0;
    for (; m < b.size(); ++m) {
        if (m > 0) {
            // C(z,m) = C(z,m-1) * (z-(m-1)) / m
            Complex step(zw.re - Real::of_long(long(m) - 1, w), zw.im);
            basis = mul_p(basis, step, w);
            Real den = Real::of_long(long(m), w);
            basis = Complex(div_p(basis.re, den, w), div_p(basis.im, den, w));
        }
        if (b[m].is_zero()) continue;

        Complex term = b[m].round_to(w) * basis;
        sum = add_p(sum, term, w);
        Real t = term.abs_ub();
        if (t > tmax) tmax = t;

        Real ref = max(tmax, sum.abs_ub());
        Real thresh = mul_2si(ref, -long(w) - 8);
        if (t <= thresh && !prev_mag.is_nan() && t <= prev_mag)
            ++small_run;
        else
            small_run = 0;
        prev_mag = t;
        if (small_run >= 8) {
            stopped = true;
            ++m;
            break;
        }
    }

    out.terms_used = m;
    out.value = sum;
    out.max_term = tmax;
    out.converged = stopped;
    Real ref = max(tmax, sum.abs_ub());
    // rounding: each term contributes a few ulps against the largest magnitude
    Real rounding = Real::of_long(2l * long(m) + 8, 64) * mul_2si(ref, 1 - long(w));
    if (stopped) {
        out.abs_err = mul_2si(ref, 4 - long(w)) + rounding;
    } else {
        // no tail certificate; report the last magnitude as a floor
        Real last = prev_mag.is_nan() ? Real(w) : prev_mag;
        out.abs_err = mul_2si(last, 1) + rounding;
    }
    return out;
}

NewtonEval eval_newton(const std::vector<Real>& b, const Complex& z, prec_t prec) {
    prec_t w = clamp_prec(prec + 32);
    for (int attempt = 0; attempt < 10; ++attempt) {
        NewtonEval pass = eval_newton_fixed(b, z, w);
        if (!pass.converged)
            raise(ErrorCode::kNeedsMoreTerms,
                  "coefficient list exhausted before the tail resolved");
        Real target = max(mul_2si(pass.value.abs(), -long(prec) - 2),
                          mul_2si(pass.max_term, -2 * long(prec) - 8));
        if (pass.abs_err <= target) {
            pass.value = pass.value.round_to(prec);
            return pass;
        }
        long deficit = pass.abs_err.ilog2_abs() - target.ilog2_abs();
        w = clamp_prec(w + std::max(64l, deficit + 16));
    }
    raise(ErrorCode::kPrecisionExhausted, "basis summation did not resolve the target accuracy");
}

} // namespace deltawv
