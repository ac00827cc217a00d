// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/verifier.hpp"

#include "core/errors.hpp"
#include "core/fitting.hpp"
#include "core/report_json.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <vector>

using namespace deltawv;

namespace {

Real frozen(const char* s) { return Real::of_string(s, 256); }

Complex one_step() { return Complex::of_long(1, 256); }

// e - 1 and e - 8/3, cross-checked against an independent bignum evaluation
const char* kEm1 = "1.7182818284590452353602874713526624977572470937000";
const char* kEm83 = "0.051615161792378568693620804685995831090580427033";

std::vector<Real> long_grid(std::initializer_list<long> rs) {
    std::vector<Real> out;
    for (long r : rs) out.push_back(Real::of_long(r, 128));
    return out;
}

} // namespace

TEST_CASE("polynomial inputs verify exactly") {
    auto f = PowerSeries::builtin("poly:0,0,1");
    DecayReport rep = verify_expansion(f, 1, 2, one_step(), long_grid({2, 3, 5, 7}), 0.05, 256);
    CHECK(rep.status == "EXACT");
    CHECK(rep.pass);
    CHECK(rep.fit_r2 == 1.0);
    CHECK(rep.sigma == 0.0);
    CHECK(rep.claimed_exponent_conservative == -3.0);
    CHECK(rep.claimed_exponent_strong == -4.0);
    REQUIRE(rep.rows.size() == 4);
    for (const DecayRow& row : rep.rows) {
        CHECK(!row.dropped);
        CHECK(row.abs_err.is_zero());
        CHECK(row.within_bound);
        CHECK(!row.usable);
    }
}

TEST_CASE("order-1 series cannot claim decay") {
    auto f = PowerSeries::builtin("exp");
    DecayReport rep =
        verify_expansion(f, 1, 3, one_step(), geometric_grid(10, 1000, 5), 0.05, 256);
    CHECK(rep.status == "FAIL");
    CHECK(!rep.pass);
    CHECK(rep.sigma == 1.0);
    CHECK(rep.claimed_exponent_conservative == 0.0);
    // the residual is flat in r
    CHECK(rep.fitted_slope > -0.01);
    CHECK(rep.fitted_slope < 0.01);
    for (const DecayRow& row : rep.rows) {
        REQUIRE(!row.dropped);
        CHECK(row.usable);
        // lhs = e - 1 and rhs = 1 + 1/2 + 1/6 at every radius
        CHECK(abs(row.lhs.re - frozen(kEm1)) < Real::of_string("1e-45", 64));
        CHECK(abs(row.rhs.re - to_real(Rational(5, 3), 256)) < Real::of_string("1e-45", 64));
        CHECK(abs(row.abs_err - frozen(kEm83)) < Real::of_string("1e-40", 64));
    }
}

TEST_CASE("first-difference wrapper reproduces the general report") {
    auto f = PowerSeries::builtin("bessel_i0_sqrt");
    std::vector<Real> grid = geometric_grid(1e2, 1e4, 5);
    DecayReport a = verify_first_difference(f, 2, one_step(), grid, 0.05, 192);
    DecayReport b = verify_expansion(f, 1, 2, one_step(), grid, 0.05, 192);
    CHECK(to_json(a).dump(2) == to_json(b).dump(2));
    CHECK(a.pass);
    CHECK(a.status == "PASS");
    CHECK(a.fitted_slope <= a.claimed_exponent_conservative + a.eps);
}

TEST_CASE("short grids are reported as unreliable") {
    auto f = PowerSeries::builtin("bessel_i0_sqrt");
    DecayReport rep =
        verify_expansion(f, 1, 1, one_step(), geometric_grid(1e2, 1e4, 3), 0.05, 192);
    CHECK(rep.status == "UNRELIABLE");
    CHECK(!rep.pass);
}

TEST_CASE("a mostly-excluded grid is reported as unreliable") {
    auto f = PowerSeries::builtin("cos_sqrt");
    // 22.207 and 61.685 are zeros of cos(sqrt(r))
    std::vector<Real> grid = {Real::of_string("22.2", 128), Real::of_string("61.7", 128),
                              Real::of_long(80, 128)};
    DecayReport rep = verify_expansion(f, 1, 2, one_step(), grid, 0.05, 192);
    CHECK(rep.dropped_rows == 2);
    CHECK(rep.status == "UNRELIABLE");
    CHECK(!rep.pass);
    CHECK(rep.rows[0].dropped);
    CHECK(!rep.rows[0].drop_reason.empty());
    CHECK(rep.rows[2].dropped == false);
}

TEST_CASE("expansion argument validation") {
    auto f = PowerSeries::builtin("exp");
    std::vector<Real> grid = long_grid({10, 100});
    auto expect_invalid = [&](auto&& thunk) {
        try {
            thunk();
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kInvalidArgument);
        }
    };
    expect_invalid([&] { (void)verify_expansion(f, 0, 1, one_step(), grid, 0.05, 256); });
    expect_invalid([&] { (void)verify_expansion(f, 3, 2, one_step(), grid, 0.05, 256); });
    expect_invalid([&] { (void)verify_expansion(f, 1, 1, Complex(256), grid, 0.05, 256); });
    expect_invalid([&] { (void)verify_expansion(f, 1, 1, one_step(), grid, 0.0, 256); });
    expect_invalid([&] { (void)verify_expansion(f, 1, 1, one_step(), grid, 1.5, 256); });
    expect_invalid([&] { (void)verify_expansion(f, 1, 1, one_step(), {}, 0.05, 256); });
    expect_invalid(
        [&] { (void)verify_expansion(f, 1, 1, one_step(), long_grid({-5}), 0.05, 256); });
    expect_invalid([&] { (void)verify_expansion(f, 1, 1, one_step(), grid, 0.05, 32); });
}

TEST_CASE("difference analogue of the central-index estimate") {
    auto f = PowerSeries::builtin("bessel_i0_sqrt");
    WVDifferenceReport rep = verify_wv_difference(f, 1, geometric_grid(1e3, 1e5, 5), 0.05, 256);
    CHECK(rep.pass);
    CHECK(rep.skipped_rows == 0);
    REQUIRE(rep.rows.size() == 5);
    for (const WVDiffRow& row : rep.rows) {
        CHECK(row.pass);
        CHECK(row.nu > 0);
        CHECK(row.rel_err <= row.bound);
    }

    SUBCASE("zero-adjacent radii are skipped, not judged") {
        auto g = PowerSeries::builtin("cos_sqrt");
        std::vector<Real> grid = {Real::of_long(50, 128), Real::of_string("61.7", 128),
                                  Real::of_long(80, 128)};
        WVDifferenceReport skipped = verify_wv_difference(g, 1, grid, 0.05, 256);
        CHECK(skipped.skipped_rows == 1);
        CHECK(skipped.rows.size() == 2);
    }
    SUBCASE("slack must stay below 1/8") {
        try {
            (void)verify_wv_difference(f, 1, geometric_grid(1e3, 1e5, 5), 0.2, 256);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kInvalidArgument);
        }
    }
    SUBCASE("order-1 series is rejected") {
        try {
            (void)verify_wv_difference(PowerSeries::builtin("exp"), 1,
                                       geometric_grid(1e3, 1e5, 5), 0.05, 256);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kInvalidArgument);
        }
    }
}

TEST_CASE("reciprocal gamma witnesses both sides") {
    GammaReport rep = gamma_counterexample(long_grid({2, 10, 50}), 256);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.all_match);
    CHECK(rep.wv_failure_exhibited);
    for (const GammaRow& row : rep.rows) {
        CHECK(row.match);
        CHECK(row.abs_diff < Real::of_string("1e-30", 64));
        CHECK(row.abs_diff <= row.combined_bound);
        CHECK(row.nu > 0);
    }
    // at z = 10 the difference quotient is -9/10 exactly
    const GammaRow& row10 = rep.rows[1];
    CHECK(abs(row10.delta_ratio.re + frozen("0.9")) < Real::of_string("1e-50", 64));
    CHECK(abs(row10.identity_value + frozen("0.9")) < Real::of_string("1e-70", 64));

    SUBCASE("samples left of the identity's domain are rejected") {
        try {
            (void)gamma_counterexample(long_grid({1}), 256);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kInvalidArgument);
        }
    }
}

TEST_CASE("decay exponent fit") {
    std::vector<std::pair<double, double>> pts = {{0, 5}, {1, 2}, {2, -1}, {3, -4}};
    auto [slope, r2] = fit_decay_exponent(pts);
    CHECK(slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(r2 == doctest::Approx(1.0).epsilon(1e-12));

    try {
        (void)fit_decay_exponent({{0, 1}, {1, 2}, {2, 3}});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInsufficientData);
    }
}
