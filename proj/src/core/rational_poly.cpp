// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/rational_poly.hpp"

#include <sstream>

namespace deltawv {

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RationalPoly RationalPoly::constant(const Rational& c) {
    if (c == 0) return RationalPoly();
    return RationalPoly(std::vector<Rational>{c});
}

void RationalPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

QComplex RationalPoly::eval(const QComplex& z) const {
    QComplex acc{Rational(0), Rational(0)};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * z + QComplex(*it);
    return acc;
}

Rational RationalPoly::eval(const Rational& z) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex RationalPoly::eval(const Complex& z, prec_t prec) const {
    prec_t w = prec + 16;
    Complex acc(w);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = add_p(mul_p(acc, z, w), Complex::of_real(to_real(*it, w)), w);
    return acc.round_to(prec);
}

RationalPoly RationalPoly::derivative() const {
    if (coeffs_.size() <= 1) return RationalPoly();
    std::vector<Rational> out(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = Rational(long(i)) * coeffs_[i];
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::derivative_over_factorial(unsigned k) const {
    if (coeffs_.size() <= k) return RationalPoly();
    std::vector<Rational> out(coeffs_.size() - k);
    for (size_t i = k; i < coeffs_.size(); ++i) {
        // C(i,k) = i!/(k!(i-k)!)
        out[i - k] = Rational(binomial(i, k)) * coeffs_[i];
    }
    return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::shift(const Rational& a) const {
    // p(x+a) via Horner in (x+a)
    std::vector<Rational> acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        // acc = acc*(x+a) + c
        std::vector<Rational> next(acc.size() + 1, Rational(0));
        for (size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] += a * acc[i];
        }
        if (next.empty()) next.push_back(Rational(0));
        next[0] += *it;
        acc = std::move(next);
    }
    return RationalPoly(std::move(acc));
}

std::string RationalPoly::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        Rational a = ::abs(coeffs_[i]);
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return RationalPoly(std::move(out));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return RationalPoly();
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RationalPoly(std::move(out));
}

RationalPoly operator*(const Rational& a, const RationalPoly& b) {
    if (a == 0) return RationalPoly();
    std::vector<Rational> out = b.coeffs_;
    for (auto& c : out) c *= a;
    return RationalPoly(std::move(out));
}

bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

} // namespace deltawv
