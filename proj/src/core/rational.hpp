// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_RATIONAL_HPP
#define DELTAWV_CORE_RATIONAL_HPP

#include <gmpxx.h>

#include "core/complexval.hpp"
#include "core/real.hpp"

#include <string>

namespace deltawv {

using BigInt = mpz_class;
using Rational = mpq_class;

// Accepts "3", "-7/2", "0.25", "-1.5e3". Exact. Throws kParseError.
Rational parse_rational(const std::string& s);

std::string rational_to_string(const Rational& q);

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

inline Real to_real(const Rational& q, prec_t prec) { return Real::of_mpq(q, prec); }
inline Real to_real(const BigInt& z, prec_t prec) { return Real::of_mpz(z, prec); }

// Exact complex rational: enough arithmetic for polynomial evaluation and
// finite differences; division only by a nonzero real rational.
struct QComplex {
    Rational re;
    Rational im;

    QComplex() = default;
    QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit QComplex(const Rational& r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Complex to_complex(prec_t prec) const { return Complex(to_real(re, prec), to_real(im, prec)); }
};

QComplex operator+(const QComplex& a, const QComplex& b);
QComplex operator-(const QComplex& a, const QComplex& b);
QComplex operator*(const QComplex& a, const QComplex& b);
QComplex operator*(const Rational& a, const QComplex& b);
QComplex operator/(const QComplex& a, const Rational& b);
bool operator==(const QComplex& a, const QComplex& b);

// z^k by repeated multiplication (k small).
QComplex qpow(const QComplex& z, unsigned long k);

} // namespace deltawv

#endif
