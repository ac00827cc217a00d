// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/errors.hpp"
#include "core/newton_series.hpp"
#include "core/power_series.hpp"
#include "core/series_eval.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace deltawv;
namespace orc = deltawv::oracles;

namespace {

// Reference values from an independent arbitrary-precision computation.
const char* kI0_20 = "43558282.559553533272106660089217691917067099482747";
const char* kI0_200 = "2.0396871734097246195416731267794596223326757361483e85";
const char* kCos10 = "-0.83907152907645245225886394782406483451993016513317";
const char* kInvGamma10p5 = "8.8239572002038009055094026242569283776546481372145e-7";
const char* kF1_10p5 = "-4.78214464702894699549862900863"; // sum (-1)^m/(m-2)! C(z,m)

Real rel_diff(const Real& a, const Real& b) {
    return abs(a - b) / max(abs(a), abs(b));
}

} // namespace

TEST_CASE("builtin series match reference values") {
    prec_t p = 256;
    auto check = [&](const char* fname, const char* zs, const char* expect) {
        PowerSeries f = PowerSeries::builtin(fname);
        EvalResult r = eval(f, Real::of_string(zs, p), p);
        Real ref = Real::of_string(expect, 320);
        CHECK(rel_diff(r.value.re, ref).to_double() < 1e-45);
        CHECK(r.value.im.is_zero());
        // reference strings carry ~50 digits; allow their quantization
        CHECK(abs(r.value.re - ref) <= r.tail_bound + mul_2si(abs(ref), -160));
        // the error bound must cover the gap to a higher-precision run
        EvalResult r2 = eval(f, Real::of_string(zs, 512), 512);
        CHECK(abs(r.value.re - r2.value.re) <= r.tail_bound + r2.tail_bound);
    };
    check("bessel_i0_sqrt", "100", kI0_20);
    check("bessel_i0_sqrt", "10000", kI0_200);
    check("cos_sqrt", "100", kCos10);
    check("recip_gamma", "10.5", kInvGamma10p5);
}

TEST_CASE("exp series agrees with the libm-independent mpfr exponential") {
    PowerSeries f = PowerSeries::builtin("exp");
    EvalResult r = eval(f, Real::of_long(3, 256), 256);
    Real ref = exp(Real::of_long(3, 320));
    CHECK(rel_diff(r.value.re, ref).to_double() < 1e-70);
}

TEST_CASE("reciprocal gamma hits exact rational values at integers") {
    PowerSeries f = PowerSeries::builtin("recip_gamma");
    EvalResult r = eval(f, Real::of_long(10, 256), 256);
    Real ref = to_real(Rational(BigInt(1), orc::factorial(9)), 320);
    CHECK(rel_diff(r.value.re, ref).to_double() < 1e-70);
}

TEST_CASE("polynomial series evaluate exactly") {
    PowerSeries f = PowerSeries::builtin("poly:1,-2,3");
    REQUIRE(f.as_polynomial() != nullptr);
    EvalResult r = eval(f, Real::of_long(2, 128), 128);
    CHECK(r.value.re.to_double() == 9.0); // 1 - 4 + 12
    CHECK(r.tail_bound.is_zero()); // exact rational route, integer result
    CHECK(f.coeff(1, 64).to_double() == -2.0);
    CHECK(f.coeff(7, 64).is_zero());
}

TEST_CASE("coefficient files load as series") {
    auto path = std::filesystem::temp_directory_path() / "dwv_coeffs_test.json";
    {
        std::ofstream out(path);
        out << "[\"2\", \"0\", \"1.5\"]\n";
    }
    PowerSeries f = PowerSeries::from_coefficient_file(path.string());
    EvalResult r = eval(f, Real::of_long(2, 128), 128);
    CHECK(r.value.re.to_double() == 8.0); // 2 + 1.5*4
    std::filesystem::remove(path);

    CHECK_THROWS_AS((void)PowerSeries::from_coefficient_file("/nonexistent/x.json"),
                    Error);
}

TEST_CASE("unknown builtin names are rejected") {
    try {
        (void)PowerSeries::builtin("no_such_series");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kUnknownName);
    }
}

TEST_CASE("derivative series") {
    PowerSeries e = PowerSeries::builtin("exp");
    PowerSeries e2 = e.derivative(2);
    for (uint32_t n = 0; n < 8; ++n)
        CHECK(rel_diff(e2.coeff(n, 128), e.coeff(n, 128)).to_double() < 1e-30);

    PowerSeries cube = PowerSeries::builtin("poly:0,0,0,1");
    const RationalPoly* d2 = cube.derivative(2).as_polynomial();
    REQUIRE(d2 != nullptr);
    CHECK(*d2 == RationalPoly(std::vector<Rational>{Rational(0), Rational(6)}));
}

TEST_CASE("delta against the raw binomial sum") {
    prec_t p = 256;
    Complex one = Complex::of_long(1, p);
    auto cross = [&](const char* name, unsigned n, long z) {
        PowerSeries f = PowerSeries::builtin(name);
        Complex zc = Complex::of_long(z, p);
        EvalResult d = delta_exact(f, n, one, zc, p);
        Complex ref = orc::direct_delta(f, n, one, zc, p);
        Real diff = (d.value - ref).abs();
        CHECK(diff <= mul_2si(d.tail_bound, 3) + mul_2si(ref.abs() + Real::of_long(1, p), -2 * p));
    };
    cross("bessel_i0_sqrt", 2, 50);
    cross("cos_sqrt", 1, 30);
    cross("recip_gamma", 1, 10);
    cross("exp", 3, 2);
}

TEST_CASE("delta of exp has the closed form (e^eta - 1)^n e^z") {
    prec_t p = 256;
    PowerSeries f = PowerSeries::builtin("exp");
    EvalResult d = delta_exact(f, 3, Complex::of_long(1, p), Complex::of_long(2, p), p);
    Real em1 = exp(Real::of_long(1, 320)) - Real::of_long(1, 320);
    Real ref = em1 * em1 * em1 * exp(Real::of_long(2, 320));
    CHECK(rel_diff(d.value.re, ref).to_double() < 1e-60);
}

TEST_CASE("delta of a polynomial is exact") {
    PowerSeries sq = PowerSeries::builtin("poly:0,0,1");
    EvalResult d = delta_exact(sq, 1, Complex::of_long(1, 128), Complex::of_long(5, 128), 128);
    CHECK(d.value.re.to_double() == 11.0); // (z+1)^2 - z^2 = 2z+1 at z=5
    CHECK(d.tail_bound.is_zero());
    // degree annihilation: Delta^3 of a quadratic is identically zero
    EvalResult z3 = delta_exact(sq, 3, Complex::of_long(1, 128), Complex::of_long(9, 128), 128);
    CHECK(z3.value.is_zero());
}

TEST_CASE("log derivatives") {
    prec_t p = 192;
    PowerSeries e = PowerSeries::builtin("exp");
    for (unsigned k = 1; k <= 4; ++k) {
        Complex v = log_derivative(e, k, Complex::of_long(7, p), p);
        CHECK(rel_diff(v.re, Real::of_long(1, p)).to_double() < 1e-40);
    }
    PowerSeries sq = PowerSeries::builtin("poly:0,0,1");
    Complex v1 = log_derivative(sq, 1, Complex::of_long(3, p), p);
    CHECK(v1.re.to_double() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    Complex v3 = log_derivative(sq, 3, Complex::of_long(3, p), p);
    CHECK(v3.is_zero());
    try {
        (void)log_derivative(sq, 1, Complex::of_long(0, p), p);
        FAIL("expected division error");
    } catch (const Error& e2) {
        CHECK(e2.code() == ErrorCode::kDivisionAtZero);
    }
}

TEST_CASE("newton series evaluation") {
    prec_t p = 192;
    SUBCASE("all-ones coefficients sum to 2^z at integers") {
        std::vector<Real> ones(64, Real::of_long(1, p));
        NewtonEval r = eval_newton(ones, Real::of_long(7, p), p);
        CHECK(r.converged);
        CHECK(r.value.re.to_double() == 128.0);
        CHECK(r.value.im.is_zero());
    }
    SUBCASE("factorial-decay coefficients match the reference value") {
        std::vector<Real> b(400, Real(320));
        Rational f(1);
        for (size_t m = 2; m < b.size(); ++m) {
            b[m] = to_real((m % 2 == 0 ? f : -f), 320);
            f /= Rational(long(m) - 1);
        }
        NewtonEval r = eval_newton(b, Real::of_string("10.5", 320), 256);
        CHECK(r.converged);
        Real ref = Real::of_string(kF1_10p5, 320);
        CHECK(rel_diff(r.value.re, ref).to_double() < 1e-28);
    }
    SUBCASE("zero coefficients do not fake convergence") {
        // only even-index terms present; the window must survive the gaps
        std::vector<Real> b(140, Real(p));
        Rational f(1);
        for (size_t m = 0; m < b.size(); m += 2) {
            b[m] = to_real(f, 256);
            f /= Rational(long(m / 2) + 1);
        }
        // reference by exact rational basis polynomials
        Rational z(11, 2);
        Rational ref(0);
        Rational coef(1);
        for (size_t m = 0; m < b.size(); m += 2) {
            ref += coef * orc::binomial_poly(unsigned(m)).eval(z);
            coef /= Rational(long(m / 2) + 1);
        }
        NewtonEval r = eval_newton(b, Real::of_string("5.5", 256), 192);
        CHECK(r.converged);
        CHECK(rel_diff(r.value.re, to_real(ref, 320)).to_double() < 1e-40);
    }
    SUBCASE("running out of coefficients raises") {
        std::vector<Real> ones(40, Real::of_long(1, p));
        try {
            (void)eval_newton(ones, Real::of_long(500, p), p);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kNeedsMoreTerms);
        }
    }
}
