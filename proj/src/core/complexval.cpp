// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/complexval.hpp"

#include "core/errors.hpp"

namespace deltawv {

std::string Complex::to_string(size_t digits) const {
    if (im.is_zero()) return re.to_string(digits);
    return re.to_string(digits) + (im.sign() < 0 ? "" : "+") + im.to_string(digits) + "i";
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }

Complex operator*(const Complex& a, const Complex& b) {
    return mul_p(a, b, std::max(a.prec(), b.prec()));
}

Complex mul_p(const Complex& a, const Complex& b, prec_t prec) {
    if (a.im.is_zero() && b.im.is_zero())
        return Complex(mul_p(a.re, b.re, prec), Real(prec));
    Real re = add_p(mul_p(a.re, b.re, prec + 8), -mul_p(a.im, b.im, prec + 8), prec);
    Real im = add_p(mul_p(a.re, b.im, prec + 8), mul_p(a.im, b.re, prec + 8), prec);
    return Complex(std::move(re), std::move(im));
}

Complex add_p(const Complex& a, const Complex& b, prec_t prec) {
    return Complex(add_p(a.re, b.re, prec), add_p(a.im, b.im, prec));
}

Complex operator/(const Complex& a, const Complex& b) {
    prec_t prec = std::max(a.prec(), b.prec());
    if (b.is_zero()) raise(ErrorCode::kDivisionAtZero, "complex division by zero");
    if (b.im.is_zero()) return Complex(div_p(a.re, b.re, prec), div_p(a.im, b.re, prec));
    prec_t w = prec + 8;
    Real den = add_p(mul_p(b.re, b.re, w), mul_p(b.im, b.im, w), w);
    Real re = add_p(mul_p(a.re, b.re, w), mul_p(a.im, b.im, w), w);
    Real im = add_p(mul_p(a.im, b.re, w), -mul_p(a.re, b.im, w), w);
    return Complex(div_p(re, den, prec), div_p(im, den, prec));
}

Complex operator*(const Real& a, const Complex& b) {
    return Complex(a * b.re, a * b.im);
}

Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

Complex unit_circle(const Real& theta, prec_t prec) {
    Real t = theta.round_to(prec + 8);
    return Complex(cos(t).round_to(prec), sin(t).round_to(prec));
}

} // namespace deltawv
