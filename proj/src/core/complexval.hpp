// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_COMPLEXVAL_HPP
#define DELTAWV_CORE_COMPLEXVAL_HPP

#include "core/real.hpp"

#include <string>

namespace deltawv {

// Rectangular complex value over Real. No MPC dependency; the handful of
// operations needed here are spelled out directly.
struct Complex {
    Real re;
    Real im;

    explicit Complex(prec_t prec = kMinPrec) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Complex of_real(const Real& r) { return Complex(r, Real(r.prec())); }
    static Complex of_long(long x, prec_t prec) {
        return Complex(Real::of_long(x, prec), Real(prec));
    }

    prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    Complex round_to(prec_t prec) const { return Complex(re.round_to(prec), im.round_to(prec)); }
    Complex conj() const { return Complex(re, -im); }
    Real abs() const { return hypot(re, im); }
    // max(|re|,|im|); cheap magnitude proxy within factor sqrt(2).
    Real abs_ub() const { return max(deltawv::abs(re), deltawv::abs(im)); }

    std::string to_string(size_t digits = 0) const;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator-(const Complex& a);

// a*b and a+b rounded at an explicit precision.
Complex mul_p(const Complex& a, const Complex& b, prec_t prec);
Complex add_p(const Complex& a, const Complex& b, prec_t prec);

// e^{i*theta} at the given precision.
Complex unit_circle(const Real& theta, prec_t prec);

} // namespace deltawv

#endif
