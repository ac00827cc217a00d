// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared-library boundary only: handles, status codes, and
// JSON report payloads, with no core headers in sight.

#include <deltawv.h>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

using nlohmann::json;

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { dwv_string_free(p); }
    std::string get() const { return p ? std::string(p) : std::string(); }
    json parse() const { return json::parse(get()); }
};

struct Series {
    dwv_series* h = nullptr;
    ~Series() { dwv_series_free(h); }
};

struct Table {
    dwv_stirling* h = nullptr;
    ~Table() { dwv_stirling_free(h); }
};

struct Equation {
    dwv_equation* h = nullptr;
    ~Equation() { dwv_equation_free(h); }
};

struct Solution {
    dwv_solution* h = nullptr;
    ~Solution() { dwv_solution_free(h); }
};

double num(const json& j) { return std::strtod(j.get<std::string>().c_str(), nullptr); }

} // namespace

TEST_CASE("version and error text") {
    CHECK(std::string(dwv_version()) == "1.0.0");
    CHECK(dwv_last_error() != nullptr);

    Series s;
    CHECK(dwv_series_builtin("no_such_series", &s.h) == DWV_ERR_UNKNOWN_NAME);
    CHECK(s.h == nullptr);
    CHECK(std::string(dwv_last_error()).size() > 0);

    CHECK(dwv_series_builtin(nullptr, &s.h) == DWV_ERR_INVALID_ARGUMENT);
    CHECK(dwv_series_builtin("exp", nullptr) == DWV_ERR_INVALID_ARGUMENT);
}

TEST_CASE("series evaluation through the boundary") {
    Series s;
    REQUIRE(dwv_series_builtin("bessel_i0_sqrt", &s.h) == DWV_OK);

    Str v;
    REQUIRE(dwv_series_eval(s.h, "400", nullptr, 256, &v.p) == DWV_OK);
    json j = v.parse();
    // I0(40) to double accuracy; tighter digits are covered inside the core
    CHECK(num(j["re"]) == doctest::Approx(1.4894774793419899e16).epsilon(1e-13));
    CHECK(num(j["im"]) == 0.0);
    CHECK(num(j["abs_err_bound"]) < 1e-40);
    CHECK(j["terms"].get<long>() > 10);

    double sigma = -1.0;
    REQUIRE(dwv_series_order(s.h, &sigma) == DWV_OK);
    CHECK(sigma == doctest::Approx(0.5).epsilon(1e-12));

    uint32_t nu = 0;
    REQUIRE(dwv_series_central_index(s.h, "10000", &nu) == DWV_OK);
    CHECK(nu == 100);

    Str m;
    REQUIRE(dwv_series_max_modulus(s.h, "100", 0, 160, &m.p) == DWV_OK);
    CHECK(std::strtod(m.p, nullptr) == doctest::Approx(43558282.559553533).epsilon(1e-12));

    SUBCASE("difference quotient and log-derivative") {
        Str d;
        REQUIRE(dwv_series_delta(s.h, 1, "1", nullptr, "25", nullptr, 128, &d.p) == DWV_OK);
        json dj = d.parse();
        // I0(2 sqrt(26)) - I0(10)
        CHECK(num(dj["re"]) == doctest::Approx(582.25642680479757).epsilon(1e-12));

        Str ld;
        REQUIRE(dwv_series_log_derivative(s.h, 1, "25", nullptr, 128, &ld.p) == DWV_OK);
        // I1(10)/(5 I0(10)) in the squared-argument variable
        CHECK(num(ld.parse()["re"]) == doctest::Approx(0.18971996519096919).epsilon(1e-12));
    }
    SUBCASE("rational scalar inputs are accepted") {
        Str a, b;
        REQUIRE(dwv_series_eval(s.h, "1/4", nullptr, 128, &a.p) == DWV_OK);
        REQUIRE(dwv_series_eval(s.h, "0.25", nullptr, 128, &b.p) == DWV_OK);
        CHECK(a.get() == b.get());
    }
    SUBCASE("junk scalars fail cleanly") {
        Str out;
        CHECK(dwv_series_eval(s.h, "twelve", nullptr, 128, &out.p) == DWV_ERR_PARSE);
        CHECK(out.p == nullptr);
    }
}

TEST_CASE("set-partition table through the boundary") {
    Table t;
    REQUIRE(dwv_stirling_create(30, &t.h) == DWV_OK);

    Str e;
    REQUIRE(dwv_stirling_entry(t.h, 10, 5, &e.p) == DWV_OK);
    CHECK(e.get() == "42525");

    Str rs;
    REQUIRE(dwv_stirling_row_sum(t.h, 12, &rs.p) == DWV_OK);
    CHECK(rs.get() == "4213597");

    int ok = 0;
    REQUIRE(dwv_stirling_check_generating(t.h, 20, &ok) == DWV_OK);
    CHECK(ok == 1);
    REQUIRE(dwv_stirling_check_convolution(t.h, 14, 6, 2, &ok) == DWV_OK);
    CHECK(ok == 1);

    Str w;
    REQUIRE(dwv_stirling_weights(t.h, 2, 4, "1", nullptr, 128, &w.p) == DWV_OK);
    json wj = w.parse();
    REQUIRE(wj.size() == 3);
    CHECK(wj[0]["k"].get<unsigned>() == 2);
    CHECK(num(wj[0]["weight"]["re"]) == 1.0);
    CHECK(num(wj[1]["weight"]["re"]) == 1.0);
    CHECK(num(wj[2]["weight"]["re"]) == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
    CHECK(num(wj[2]["weight"]["im"]) == 0.0);

    Str oob;
    CHECK(dwv_stirling_entry(t.h, 31, 2, &oob.p) == DWV_ERR_INVALID_ARGUMENT);
}

TEST_CASE("expansion reports through the boundary") {
    SUBCASE("polynomial input verifies exactly") {
        Series p;
        REQUIRE(dwv_series_builtin("poly:0,0,1", &p.h) == DWV_OK);
        Str rep;
        REQUIRE(dwv_verify_expansion(p.h, 1, 2, "1", nullptr, 1e1, 1e3, 5, 0.05, 256,
                                     &rep.p) == DWV_OK);
        json j = rep.parse();
        CHECK(j["status"] == "EXACT");
        CHECK(j["pass"] == true);
        CHECK(j["rows"].size() == 5);
    }
    SUBCASE("first-difference wrapper matches the general entry point") {
        Series b;
        REQUIRE(dwv_series_builtin("bessel_i0_sqrt", &b.h) == DWV_OK);
        Str r1, r2;
        REQUIRE(dwv_verify_first_difference(b.h, 2, "1", nullptr, 1e2, 1e4, 5, 0.05, 192,
                                            &r1.p) == DWV_OK);
        REQUIRE(dwv_verify_expansion(b.h, 1, 2, "1", nullptr, 1e2, 1e4, 5, 0.05, 192,
                                     &r2.p) == DWV_OK);
        CHECK(r1.get() == r2.get());
        CHECK(r1.parse()["pass"] == true);
    }
    SUBCASE("argument validation crosses as status codes") {
        Series b;
        REQUIRE(dwv_series_builtin("exp", &b.h) == DWV_OK);
        Str rep;
        CHECK(dwv_verify_expansion(b.h, 2, 1, "1", nullptr, 1e1, 1e3, 5, 0.05, 256, &rep.p) ==
              DWV_ERR_INVALID_ARGUMENT);
        CHECK(dwv_verify_expansion(b.h, 1, 2, "0", nullptr, 1e1, 1e3, 5, 0.05, 256, &rep.p) ==
              DWV_ERR_INVALID_ARGUMENT);
        CHECK(dwv_verify_expansion(b.h, 1, 2, "1", nullptr, 1e3, 1e1, 5, 0.05, 256, &rep.p) ==
              DWV_ERR_INVALID_ARGUMENT);
    }
}

TEST_CASE("growth reports through the boundary") {
    Series b;
    REQUIRE(dwv_series_builtin("bessel_i0_sqrt", &b.h) == DWV_OK);

    Str prof;
    REQUIRE(dwv_wv_profile(b.h, 1e2, 1e4, 5, 0, 160, &prof.p) == DWV_OK);
    json pj = prof.parse();
    CHECK(pj["samples"].size() == 5);
    CHECK(num(pj["order_fit"]) == doctest::Approx(0.5).epsilon(0.1));

    Str pw;
    REQUIRE(dwv_check_pointwise(b.h, 1, 0.1, 1e2, 1e4, 3, 256, &pw.p) == DWV_OK);
    json pwj = pw.parse();
    CHECK(pwj["pass"] == true);

    Str wv;
    REQUIRE(dwv_verify_wv_difference(b.h, 1, 1e3, 1e5, 5, 0.05, 256, &wv.p) == DWV_OK);
    CHECK(wv.parse()["pass"] == true);

    Str gf;
    REQUIRE(dwv_growth_fit_series(b.h, 1e2, 1e6, 9, 0, 160, &gf.p) == DWV_OK);
    json gj = gf.parse();
    CHECK(num(gj["chi_fit"]) == doctest::Approx(0.51).epsilon(0.1));
}

TEST_CASE("gamma counterexample row shape is pinned") {
    const char* zs[] = {"10"};
    Str rep;
    REQUIRE(dwv_gamma_counterexample(zs, 1, 256, &rep.p) == DWV_OK);
    json j = rep.parse();
    REQUIRE(j["rows"].size() == 1);
    const json& row = j["rows"][0];
    CHECK(row["z"].is_number());
    CHECK(row["z"].get<long>() == 10);
    CHECK(row["delta_ratio"].is_string());
    CHECK(row["delta_ratio"].get<std::string>() == "-0.9");
    CHECK(row["identity"].get<std::string>() == "1/z-1");
    CHECK(row["match"] == true);
    CHECK(j["all_match"] == true);
    CHECK(j["wv_failure_exhibited"] == true);

    Str bad;
    CHECK(dwv_gamma_counterexample(nullptr, 1, 256, &bad.p) == DWV_ERR_INVALID_ARGUMENT);
    const char* low[] = {"1"};
    CHECK(dwv_gamma_counterexample(low, 1, 256, &bad.p) == DWV_ERR_INVALID_ARGUMENT);
}

TEST_CASE("difference equations through the boundary") {
    Equation eq;
    REQUIRE(dwv_equation_parse(R"({"coeffs": [[1], [], [0, 1]], "name": "width2"})", nullptr,
                               &eq.h) == DWV_OK);

    Str poly;
    REQUIRE(dwv_equation_polygon(eq.h, &poly.p) == DWV_OK);
    json pj = poly.parse();
    REQUIRE(pj["predicted_orders"].size() == 1);
    CHECK(pj["predicted_orders"][0] == "1/2");

    Str rec;
    REQUIRE(dwv_equation_recurrence(eq.h, &rec.p) == DWV_OK);
    json rj = rec.parse();
    CHECK(rj["t_min"].get<long>() == 0);
    CHECK(rj["t_max"].get<long>() == 2);
    CHECK(rj["span"].get<long>() == 2);
    REQUIRE(rj["terms"].size() == 3);
    CHECK(rj["terms"][0]["poly"] == "1");
    CHECK(rj["terms"][1]["poly"] == "m");
    CHECK(rj["terms"][2]["poly"] == "m");

    SUBCASE("float coefficients are a parse error") {
        Equation bad;
        CHECK(dwv_equation_parse(R"({"coeffs": [[0.5], [1]]})", "t", &bad.h) == DWV_ERR_PARSE);
    }
    SUBCASE("structural violations are validation errors") {
        Equation bad;
        CHECK(dwv_equation_parse(R"({"coeffs": [[1]]})", "t", &bad.h) == DWV_ERR_VALIDATION);
    }
}

TEST_CASE("minimal solution through the boundary") {
    Equation eq;
    // f(z+1) = 2 f(z); the binomial coefficients of 2^z are all ones
    REQUIRE(dwv_equation_parse(R"({"coeffs": [[-1], [1]], "name": "doubling"})", nullptr,
                               &eq.h) == DWV_OK);
    Solution sol;
    REQUIRE(dwv_equation_solve(eq.h, 32, 0, 256, &sol.h) == DWV_OK);

    size_t n = 0;
    REQUIRE(dwv_solution_size(sol.h, &n) == DWV_OK);
    CHECK(n == 32);

    Str c5;
    REQUIRE(dwv_solution_coefficient(sol.h, 5, &c5.p) == DWV_OK);
    CHECK(c5.get() == "1");

    Str info;
    REQUIRE(dwv_solution_info(sol.h, &info.p) == DWV_OK);
    json ij = info.parse();
    CHECK(ij["terms"].get<size_t>() == 32);
    CHECK(ij["first_free_index"].get<unsigned>() == 0);
    CHECK(ij["subspace_dim"].get<unsigned>() == 0);

    Str v;
    REQUIRE(dwv_solution_eval(sol.h, "7", nullptr, 128, &v.p) == DWV_OK);
    json vj = v.parse();
    CHECK(num(vj["re"]) == 128.0);
    CHECK(num(vj["im"]) == 0.0);

    Str oob;
    CHECK(dwv_solution_coefficient(sol.h, 32, &oob.p) == DWV_ERR_INVALID_ARGUMENT);

    SUBCASE("growth verdict for the half-order equation") {
        Equation eq2;
        REQUIRE(dwv_equation_parse(R"({"coeffs": [[1], [], [0, 1]]})", "width2", &eq2.h) ==
                DWV_OK);
        Str verdict;
        REQUIRE(dwv_verify_growth(eq2.h, 4000, 1e3, 1e5, 5, 256, &verdict.p) == DWV_OK);
        json vjj = verdict.parse();
        CHECK(vjj["status"] == "PASS");
        CHECK(vjj["pass"] == true);
        CHECK(num(vjj["matched_order"]) == 0.5);
        CHECK(vjj["recurrence_span"].get<long>() == 2);
    }
}
