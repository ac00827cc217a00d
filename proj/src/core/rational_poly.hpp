// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_RATIONAL_POLY_HPP
#define DELTAWV_CORE_RATIONAL_POLY_HPP

#include "core/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deltawv {

// Dense polynomial with exact rational coefficients, ascending degree.
// The zero polynomial is the empty coefficient list.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);

    static RationalPoly constant(const Rational& c);

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    QComplex eval(const QComplex& z) const;
    Rational eval(const Rational& z) const;
    Complex eval(const Complex& z, prec_t prec) const;

    RationalPoly derivative() const;
    // k-th derivative divided by k! (Taylor coefficient shift)
    RationalPoly derivative_over_factorial(unsigned k) const;
    // p(x + a)
    RationalPoly shift(const Rational& a) const;

    std::string to_string(const std::string& var = "z") const;

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const Rational& a, const RationalPoly& b);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b);

    // p(m) -> p(m-1) on the argument; used by the basis push-through algebra.
    RationalPoly compose_shift_minus_one() const { return shift(Rational(-1)); }

private:
    void trim();
    std::vector<Rational> coeffs_;
};

} // namespace deltawv

#endif
