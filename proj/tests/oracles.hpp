// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations for the test suite. Everything here
// deliberately avoids the library's own algorithms: partition counts come
// from exhaustive enumeration, Stirling numbers from the inclusion-exclusion
// formula, differences from the raw binomial sum at doubled precision, and
// central indices from exact integer term-ratio arguments.

#ifndef DELTAWV_TESTS_ORACLES_HPP
#define DELTAWV_TESTS_ORACLES_HPP

#include "core/complexval.hpp"
#include "core/power_series.hpp"
#include "core/rational.hpp"
#include "core/rational_poly.hpp"
#include "core/series_eval.hpp"

#include <cstdint>
#include <vector>

namespace deltawv::oracles {

inline BigInt binom(unsigned n, unsigned k) {
    if (k > n) return BigInt(0);
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline BigInt factorial(unsigned n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

// S(n,m) = (1/m!) sum_{j<=m} (-1)^(m-j) C(m,j) j^n. No triangle recurrence.
inline BigInt stirling_by_formula(unsigned n, unsigned m) {
    BigInt acc(0);
    for (unsigned j = 0; j <= m; ++j) {
        BigInt term;
        mpz_ui_pow_ui(term.get_mpz_t(), j, n);
        term *= binom(m, j);
        if ((m - j) % 2 == 1) term = -term;
        acc += term;
    }
    return acc / factorial(m);
}

namespace detail {
inline void rgs_walk(unsigned n, unsigned i, unsigned blocks,
                     std::vector<unsigned long long>& counts) {
    if (i == n) {
        ++counts[blocks];
        return;
    }
    for (unsigned b = 0; b <= blocks; ++b)
        rgs_walk(n, i + 1, b == blocks ? blocks + 1 : blocks, counts);
}
} // namespace detail

// counts[m] = number of set partitions of an n-set into m blocks, by walking
// every restricted growth string.
inline std::vector<unsigned long long> partition_counts(unsigned n) {
    std::vector<unsigned long long> counts(n + 1, 0);
    if (n == 0) {
        counts[0] = 1;
        return counts;
    }
    detail::rgs_walk(n, 1, 1, counts);
    return counts;
}

// x(x-1)...(x-m+1) as an exact polynomial.
inline RationalPoly falling_factorial_poly(unsigned m) {
    RationalPoly p(std::vector<Rational>{Rational(1)});
    for (unsigned j = 0; j < m; ++j) {
        RationalPoly lin(std::vector<Rational>{Rational(-long(j)), Rational(1)});
        p = p * lin;
    }
    return p;
}

// C(z,m) = falling(z,m)/m!.
inline RationalPoly binomial_poly(unsigned m) {
    Rational scale(BigInt(1), factorial(m));
    scale.canonicalize();
    return scale * falling_factorial_poly(m);
}

// Raw binomial combination sum_j (-1)^(n-j) C(n,j) f(z + j eta) at doubled
// precision; the reference for any cleverer difference evaluation.
inline Complex direct_delta(const PowerSeries& f, unsigned n, const Complex& eta,
                            const Complex& z, prec_t prec) {
    prec_t w = prec * 2 + 64;
    Complex acc(w);
    for (unsigned j = 0; j <= n; ++j) {
        Real jr = Real::of_long(long(j), w);
        Complex zj(z.re + jr * eta.re, z.im + jr * eta.im);
        Complex v = eval(f, zj, w).value;
        Real c = to_real(binom(n, j), w);
        if ((n - j) % 2 == 1) c = -c;
        acc = acc + c * v;
    }
    return acc;
}

// Central index of sum r^n/(n!)^2 via the exact ratio r vs (n+1)^2; the term
// sequence is unimodal, ties go to the larger index.
inline uint32_t nu_bessel_exact(unsigned long long r) {
    uint32_t nu = 0;
    while ((unsigned long long)(nu + 1) * (nu + 1) <= r) ++nu;
    return nu;
}

} // namespace deltawv::oracles

#endif
