// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_NEWTON_SERIES_HPP
#define DELTAWV_CORE_NEWTON_SERIES_HPP

#include "core/complexval.hpp"

#include <cstdint>
#include <vector>

namespace deltawv {

struct NewtonEval {
    Complex value;
    Real abs_err;       // omitted tail + rounding, absolute
    Real max_term;      // largest |b_m C(z,m)| seen
    uint32_t terms_used = 0;
    bool converged = false; // false when the coefficient list ran out first
};

// sum_m b_m C(z,m) summed with the incremental basis step
// C(z,m+1) = C(z,m) (z-m)/(m+1). One pass at a fixed working precision;
// stops once eight consecutive nonzero terms fall monotonically below
// 2^-(work_prec+8) of max(largest term, |sum|). Zero coefficients neither
// advance nor reset that window.
NewtonEval eval_newton_fixed(const std::vector<Real>& b, const Complex& z,
                             prec_t work_prec);

// Escalating wrapper: raises the working precision until the absolute error
// bound resolves prec significant bits of the sum. kNeedsMoreTerms when the
// list is exhausted before the tail is certified, kPrecisionExhausted when
// escalation stalls.
NewtonEval eval_newton(const std::vector<Real>& b, const Complex& z, prec_t prec);

inline NewtonEval eval_newton(const std::vector<Real>& b, const Real& z, prec_t prec) {
    return eval_newton(b, Complex::of_real(z), prec);
}

} // namespace deltawv

#endif
