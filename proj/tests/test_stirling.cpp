// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/errors.hpp"
#include "core/stirling.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace deltawv;
namespace orc = deltawv::oracles;

TEST_CASE("triangle matches the inclusion-exclusion formula") {
    StirlingTable t(30);
    for (unsigned n = 0; n <= 30; ++n)
        for (unsigned m = 0; m <= n; ++m)
            CHECK(t.entry(n, m) == orc::stirling_by_formula(n, m));
    CHECK(t.entry(3, 7) == 0);
    CHECK(t.entry(0, 0) == 1);
    CHECK_THROWS_AS((void)t.entry(31, 1), Error);
}

TEST_CASE("row sums match exhaustive partition enumeration") {
    StirlingTable t(12);
    // Bell numbers 0..12
    const unsigned long long bell[] = {1,      1,      2,      5,      15,
                                       52,     203,    877,    4140,   21147,
                                       115975, 678570, 4213597};
    for (unsigned n = 0; n <= 12; ++n) {
        auto counts = orc::partition_counts(n);
        BigInt total(0);
        for (unsigned m = 0; m <= n; ++m) {
            CHECK(t.entry(n, m) == BigInt((unsigned long)counts[m]));
            total += BigInt((unsigned long)counts[m]);
        }
        CHECK(t.row_sum(n) == total);
        CHECK(t.row_sum(n) == BigInt((unsigned long)bell[n]));
    }
}

TEST_CASE("generating identity, both as polynomials and at integer points") {
    StirlingTable t(20);
    for (unsigned n = 0; n <= 20; ++n) {
        CHECK(t.check_generating_identity(n));
        for (long x = -5; x <= 5; ++x) {
            Rational sum(0);
            for (unsigned m = 0; m <= n; ++m)
                sum += Rational(orc::stirling_by_formula(n, m)) *
                       orc::falling_factorial_poly(m).eval(Rational(x));
            Rational xn(1);
            for (unsigned i = 0; i < n; ++i) xn *= Rational(x);
            CHECK(sum == xn);
        }
    }
}

TEST_CASE("cross recurrence holds on a spot grid") {
    StirlingTable t(14);
    for (unsigned n = 0; n <= 14; ++n)
        for (unsigned m = 0; m <= n; ++m)
            for (unsigned r = 0; r <= m; ++r) CHECK(t.check_cross_recurrence(n, m, r));
}

TEST_CASE("expansion scalars against hand values") {
    StirlingTable t(8);
    // n = 2: q_k = 2! S(k,2)/k! for k = 2,3,4 -> 1, 1, 7/12
    auto q = expansion_scalars(t, 2, 4);
    REQUIRE(q.size() == 3);
    CHECK(q[0] == Rational(1));
    CHECK(q[1] == Rational(1));
    CHECK(q[2] == Rational(7, 12));

    // partial sums towards (e-1)^2: 1 + 1 + 7/12 = 31/12
    CHECK(q[0] + q[1] + q[2] == Rational(31, 12));

    // n = 1: q_k = 1/k!
    auto q1 = expansion_scalars(t, 1, 5);
    for (size_t i = 0; i < q1.size(); ++i) {
        Rational expect(BigInt(1), orc::factorial(unsigned(i) + 1));
        expect.canonicalize();
        CHECK(q1[i] == expect);
    }
}

TEST_CASE("weights scale by powers of the step") {
    StirlingTable t(6);
    QComplex half{Rational(1, 2), Rational(0)};
    auto exact = expansion_weights_exact(t, 2, 5, half);
    auto scalars = expansion_scalars(t, 2, 5);
    REQUIRE(exact.size() == scalars.size());
    Rational pw(1, 4); // eta^2 at k=2
    for (size_t i = 0; i < exact.size(); ++i) {
        CHECK(exact[i].re == scalars[i] * pw);
        CHECK(exact[i].im == Rational(0));
        pw *= Rational(1, 2);
    }

    // rounded weights sit within 2 ulps of the exact values
    Complex eta(Real::of_string("0.5", 192), Real(192));
    auto rounded = expansion_weights(t, 2, 5, eta, 192);
    REQUIRE(rounded.size() == exact.size());
    for (size_t i = 0; i < exact.size(); ++i) {
        Real diff = abs(rounded[i].re - to_real(exact[i].re, 320));
        CHECK(diff <= mul_2si(abs(to_real(exact[i].re, 320)), -190));
    }
}
