// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/difference_eq.hpp"

#include "core/errors.hpp"
#include "core/fitting.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace deltawv;
namespace orc = deltawv::oracles;

namespace {

RationalPoly poly(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.push_back(Rational(c));
    return RationalPoly(std::move(v));
}

DifferenceEquation make_eq(std::vector<RationalPoly> coeffs, std::string name) {
    DifferenceEquation eq;
    eq.coeffs = std::move(coeffs);
    eq.name = std::move(name);
    return eq;
}

// a_0 = 1, a_2 = z
DifferenceEquation eq_order2() { return make_eq({poly({1}), poly({}), poly({0, 1})}, "eq1"); }
// a_0 = 1, a_3 = z
DifferenceEquation eq_order3() {
    return make_eq({poly({1}), poly({}), poly({}), poly({0, 1})}, "eq2");
}

RationalPoly term_poly(const BinomialRecurrence& rec, long t) {
    auto it = rec.terms.find(t);
    return it == rec.terms.end() ? RationalPoly() : it->second;
}

template <typename Fn>
void expect_code(ErrorCode code, Fn&& thunk) {
    try {
        thunk();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

// representative of the width-3 recurrence pinned to b1 = 1, b2 = 0,
// cross-checked against an independent bignum downward solve
const char* kEq3Rep[] = {
    "-0.805209129500773788172453199676",   // b3
    "-0.194790870499226211827546800324",   // b4
    "0.194790870499226211827546800324",    // b5
    "0.0736121726676983842299375995677",   // b6
    "-0.0249144550428918312730508994867",  // b7
    "-0.0140437190569534110924584605782",  // b8
    "0.00177502361233701372080219398353",  // b9
    "0.00178418425093324788963364880028",  // b10
    "-0.0000287193688140715030763412280099", // b11
    "-0.000168505477001152243679458103494",  // b12
};

} // namespace

TEST_CASE("equation parsing") {
    SUBCASE("integers and exact strings") {
        DifferenceEquation eq =
            parse_equation(R"({"coeffs": [["1/3", "0.25"], [2]], "name": "mix"})", "fb");
        CHECK(eq.name == "mix");
        CHECK(eq.order() == 1);
        CHECK(eq.coeffs[0].coeff(0) == Rational(1, 3));
        CHECK(eq.coeffs[0].coeff(1) == Rational(1, 4));
        CHECK(eq.coeffs[1].coeff(0) == Rational(2));
        CHECK(eq.eta.re == Rational(1));
        CHECK(eq.eta.im == Rational(0));
    }
    SUBCASE("fallback name") {
        DifferenceEquation eq = parse_equation(R"({"coeffs": [[1], [0, 1]]})", "fb");
        CHECK(eq.name == "fb");
        CHECK(eq.coeffs[1] == poly({0, 1}));
    }
    SUBCASE("float tokens are rejected") {
        expect_code(ErrorCode::kParseError,
                    [] { (void)parse_equation(R"({"coeffs": [[0.5], [1]]})", "t"); });
    }
    SUBCASE("malformed json") {
        expect_code(ErrorCode::kParseError, [] { (void)parse_equation("{nope", "t"); });
    }
    SUBCASE("at least two nonzero coefficient polynomials") {
        expect_code(ErrorCode::kValidationError,
                    [] { (void)parse_equation(R"({"coeffs": [[], [1]]})", "t"); });
    }
    SUBCASE("leading polynomial must be nonzero") {
        expect_code(ErrorCode::kValidationError,
                    [] { (void)parse_equation(R"({"coeffs": [[1], [1], []]})", "t"); });
    }
    SUBCASE("file round trip") {
        std::string path = "eq_parse_roundtrip.json";
        {
            std::ofstream out(path);
            out << R"({"coeffs": [[1], [], [0, 1]], "name": "disk"})";
        }
        DifferenceEquation eq = parse_equation_file(path);
        std::remove(path.c_str());
        CHECK(eq.name == "disk");
        CHECK(eq.order() == 2);
        CHECK(eq.coeffs[2] == poly({0, 1}));

        expect_code(ErrorCode::kIoError,
                    [] { (void)parse_equation_file("/nonexistent/eq.json"); });
    }
}

TEST_CASE("degree diagram and order prediction") {
    SUBCASE("slope 1/2 predicts order 1/2") {
        NewtonPolygon p = newton_polygon(eq_order2());
        REQUIRE(p.points.size() == 2);
        CHECK(p.points[0] == std::pair<unsigned, long>{0u, 0l});
        CHECK(p.points[1] == std::pair<unsigned, long>{2u, 1l});
        REQUIRE(p.segments.size() == 1);
        CHECK(p.segments[0].slope == Rational(1, 2));
        REQUIRE(p.predicted_orders.size() == 1);
        CHECK(p.predicted_orders[0] == Rational(1, 2));
    }
    SUBCASE("slope 1/3 predicts order 2/3") {
        NewtonPolygon p = newton_polygon(eq_order3());
        REQUIRE(p.predicted_orders.size() == 1);
        CHECK(p.predicted_orders[0] == Rational(2, 3));
    }
    SUBCASE("slope 1 predicts nothing") {
        NewtonPolygon p = newton_polygon(make_eq({poly({1}), poly({0, 1})}, "t"));
        CHECK(p.predicted_orders.empty());
    }
    SUBCASE("slope 0 predicts nothing") {
        NewtonPolygon p = newton_polygon(make_eq({poly({-1}), poly({1})}, "t"));
        REQUIRE(p.segments.size() == 1);
        CHECK(p.segments[0].slope == Rational(0));
        CHECK(p.predicted_orders.empty());
    }
    SUBCASE("two hull segments give two orders") {
        // a_0 = 1, a_2 = z, a_5 = z^2
        DifferenceEquation eq = make_eq(
            {poly({1}), poly({}), poly({0, 1}), poly({}), poly({}), poly({0, 0, 1})}, "t");
        NewtonPolygon p = newton_polygon(eq);
        REQUIRE(p.predicted_orders.size() == 2);
        CHECK(p.predicted_orders[0] == Rational(1, 2));
        CHECK(p.predicted_orders[1] == Rational(2, 3));
        // multiplying the equation by z shifts the diagram, not the slopes
        DifferenceEquation scaled = eq;
        for (RationalPoly& a : scaled.coeffs)
            if (!a.is_zero()) a = a * poly({0, 1});
        NewtonPolygon q = newton_polygon(scaled);
        REQUIRE(q.predicted_orders.size() == 2);
        CHECK(q.predicted_orders[0] == Rational(1, 2));
        CHECK(q.predicted_orders[1] == Rational(2, 3));
    }
}

TEST_CASE("binomial image of the equation") {
    SUBCASE("width-2 image") {
        BinomialRecurrence rec = binomial_recurrence(eq_order2());
        CHECK(rec.t_min == 0);
        CHECK(rec.t_max == 2);
        CHECK(rec.span() == 2);
        CHECK(term_poly(rec, 0) == poly({1}));
        CHECK(term_poly(rec, 1) == poly({0, 1}));
        CHECK(term_poly(rec, 2) == poly({0, 1}));
    }
    SUBCASE("width-3 image") {
        BinomialRecurrence rec = binomial_recurrence(eq_order3());
        CHECK(rec.t_min == 0);
        CHECK(rec.t_max == 3);
        CHECK(term_poly(rec, 0) == poly({1}));
        CHECK(term_poly(rec, 1).is_zero());
        CHECK(term_poly(rec, 2) == poly({0, 1}));
        CHECK(term_poly(rec, 3) == poly({0, 1}));
    }
    SUBCASE("non-unit step is rejected") {
        DifferenceEquation eq = eq_order2();
        eq.eta = QComplex(Rational(1, 2), Rational(0));
        expect_code(ErrorCode::kInvalidArgument, [&] { (void)binomial_recurrence(eq); });
    }
}

TEST_CASE("operator algebra matches direct expansion") {
    // image of a single basis polynomial, computed with no recurrence algebra:
    // apply the operator to C(z,m0) as an exact polynomial, then read off
    // Newton coefficients via the forward-difference table at 0..deg
    std::vector<DifferenceEquation> eqs;
    eqs.push_back(eq_order2());
    eqs.push_back(make_eq({poly({1, 1}), poly({3}), poly({0, 0, 1})}, "dense"));
    for (const DifferenceEquation& eq : eqs) {
        CAPTURE(eq.name);
        BinomialRecurrence rec = binomial_recurrence(eq);
        for (unsigned m0 = 0; m0 <= 8; ++m0) {
            RationalPoly cz = orc::binomial_poly(m0);
            RationalPoly image;
            for (size_t k = 0; k < eq.coeffs.size(); ++k) {
                if (eq.coeffs[k].is_zero()) continue;
                RationalPoly dk = cz;
                for (size_t i = 0; i < k; ++i)
                    dk = dk.shift(Rational(1)) + Rational(-1) * dk;
                image = image + eq.coeffs[k] * dk;
            }
            long deg = image.degree();
            for (long M = 0; M <= deg + 2; ++M) {
                Rational got(0);
                for (long j = 0; j <= M; ++j) {
                    Rational b(orc::binom(unsigned(M), unsigned(j)));
                    if ((M - j) % 2 == 1) b = -b;
                    got += b * image.eval(Rational(j));
                }
                Rational expected = term_poly(rec, long(m0) - M).eval(Rational(M));
                CHECK(got == expected);
            }
        }
    }
}

TEST_CASE("ascending exact solves") {
    SUBCASE("doubling sequence") {
        // f(z+1) = 2 f(z): all-ones coefficients
        BinomialRecurrence rec = binomial_recurrence(make_eq({poly({-1}), poly({1})}, "t"));
        CHECK(rec.span() == 1);
        NewtonSolution sol = solve_minimal(rec, 24, 0, 192);
        CHECK(sol.subspace_dim == 0);
        CHECK(sol.stability == 0.0);
        CHECK(sol.first_free_index == 0);
        REQUIRE(sol.b.size() == 24);
        for (const Real& v : sol.b) CHECK(v == Real::of_long(1, 64));
    }
    SUBCASE("vanishing leading row forces the head") {
        BinomialRecurrence rec = binomial_recurrence(make_eq({poly({1}), poly({0, 1})}, "t"));
        NewtonSolution sol = solve_minimal(rec, 16, 0, 192);
        CHECK(sol.first_free_index == 1);
        CHECK(sol.subspace_dim == 0);
        REQUIRE(sol.b.size() == 16);
        CHECK(sol.b[0].is_zero());
        for (long m = 1; m < 16; ++m) {
            long want = (m % 2 == 0) ? -m : m;
            CHECK(sol.b[size_t(m)] == Real::of_long(want, 64));
        }
    }
}

TEST_CASE("minimal solution by descent decays factorially") {
    NewtonSolution sol = solve_minimal(binomial_recurrence(eq_order2()), 40, 0, 256);
    CHECK(sol.first_free_index == 2);
    CHECK(sol.subspace_dim == 1);
    CHECK(sol.stability <= 1e-20);
    REQUIRE(sol.b.size() == 40);
    CHECK(sol.b[0].is_zero());
    CHECK(abs(sol.b[1]) < Real::of_string("1e-40", 64));
    Real tol = Real::of_string("1e-38", 64);
    for (unsigned m = 2; m < 40; ++m) {
        // b_m (m-2)! = +-1
        Real scaled = sol.b[m] * Real::of_mpz(orc::factorial(m - 2), 256);
        Real want = Real::of_long(m % 2 == 0 ? 1 : -1, 64);
        CHECK(abs(scaled - want) < tol);
    }
}

TEST_CASE("two-dimensional minimal subspace") {
    NewtonSolution sol = solve_minimal(binomial_recurrence(eq_order3()), 64, 0, 256);
    CHECK(sol.first_free_index == 1);
    CHECK(sol.subspace_dim == 2);
    CHECK(sol.stability <= 1e-20);
    REQUIRE(sol.b.size() == 64);
    CHECK(sol.b[0].is_zero());
    CHECK(abs(sol.b[1] - Real::of_long(1, 64)) < Real::of_string("1e-50", 64));
    CHECK(abs(sol.b[2]) < Real::of_string("1e-50", 64));
    for (unsigned j = 0; j < 10; ++j) {
        Real want = Real::of_string(kEq3Rep[j], 256);
        CHECK(abs(sol.b[3 + j] - want) < Real::of_string("1e-25", 64));
    }
}

TEST_CASE("growth matches the degree-diagram prediction") {
    GrowthVerdict v =
        verify_predicted_growth(eq_order2(), 10000, geometric_grid(1e3, 1e6, 5), 256);
    CHECK(v.status == "PASS");
    CHECK(v.pass);
    CHECK(v.matched_order == 0.5);
    CHECK(v.recurrence_span == 2);
    CHECK(v.fit.fit_r2 > 0.99);
    CHECK(v.residuals.size() == 5);

    SUBCASE("no prediction without a fractional hull slope") {
        GrowthVerdict w = verify_predicted_growth(make_eq({poly({1}), poly({0, 1})}, "t"), 64,
                                                  geometric_grid(10, 100, 5), 128);
        CHECK(w.status == "NO_PREDICTION");
        CHECK(!w.pass);
        CHECK(w.solution.b.empty());
    }
}
