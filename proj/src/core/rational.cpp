// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/rational.hpp"

#include "core/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace deltawv {

static bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_rational(const std::string& input) {
    std::string s;
    s.reserve(input.size());
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) raise(ErrorCode::kParseError, "empty rational literal");

    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty()) raise(ErrorCode::kParseError, "bad rational literal: '" + input + "'");

    auto fail = [&]() { raise(ErrorCode::kParseError, "bad rational literal: '" + input + "'"); };

    Rational q;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) fail();
        BigInt d(den, 10);
        if (d == 0) fail();
        q = Rational(BigInt(num, 10), d);
    } else {
        std::string digits = s;
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            digits = s.substr(0, e);
            std::string es = s.substr(e + 1);
            if (es.empty()) fail();
            char* end = nullptr;
            exp10 = std::strtol(es.c_str(), &end, 10);
            if (end == nullptr || *end != '\0') fail();
        }
        long frac_digits = 0;
        if (auto dot = digits.find('.'); dot != std::string::npos) {
            std::string head = digits.substr(0, dot), tail = digits.substr(dot + 1);
            frac_digits = static_cast<long>(tail.size());
            digits = head + tail;
            if (digits.empty()) fail();
        }
        if (!all_digits(digits)) fail();
        q = Rational(BigInt(digits, 10));
        long net = exp10 - frac_digits;
        if (net != 0) {
            BigInt p10;
            mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net > 0 ? net : -net));
            if (net > 0)
                q *= Rational(p10);
            else
                q /= Rational(p10);
        }
    }
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    if (k > n) return BigInt(0);
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }

QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QComplex operator*(const Rational& a, const QComplex& b) { return {a * b.re, a * b.im}; }

QComplex operator/(const QComplex& a, const Rational& b) {
    if (b == 0) raise(ErrorCode::kDivisionAtZero, "rational division by zero");
    return {a.re / b, a.im / b};
}

bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }

QComplex qpow(const QComplex& z, unsigned long k) {
    QComplex r(Rational(1));
    for (unsigned long i = 0; i < k; ++i) r = r * z;
    return r;
}

} // namespace deltawv
