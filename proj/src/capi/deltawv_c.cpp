// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "deltawv.h"

#include "core/difference_eq.hpp"
#include "core/errors.hpp"
#include "core/newton_series.hpp"
#include "core/power_series.hpp"
#include "core/report_json.hpp"
#include "core/series_eval.hpp"
#include "core/stirling.hpp"
#include "core/verifier.hpp"
#include "core/wiman_valiron.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

using namespace deltawv;

struct dwv_series {
    PowerSeries s;
};
struct dwv_stirling {
    StirlingTable t;
};
struct dwv_equation {
    DifferenceEquation eq;
};
struct dwv_solution {
    NewtonSolution sol;
};

namespace {

thread_local std::string g_last_error;

// All char** outputs come from malloc so dwv_string_free can be plain free
// even if the library and the caller use different C++ runtimes.
char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
dwv_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DWV_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<dwv_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DWV_ERR_OUT_OF_MEMORY;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DWV_ERR_INTERNAL;
    }
}

void require(bool cond, const char* msg) {
    if (!cond) raise(ErrorCode::kInvalidArgument, msg);
}

prec_t to_prec(uint64_t prec) {
    require(prec <= (uint64_t(1) << 22), "precision capped at 2^22 bits");
    return clamp_prec(static_cast<prec_t>(prec));
}

// Accepts decimal strings and, for convenience, exact fractions "p/q".
Real parse_scalar(const char* s, prec_t prec, const char* what) {
    require(s != nullptr, what);
    std::string text(s);
    if (text.find('/') != std::string::npos)
        return to_real(parse_rational(text), prec);
    return Real::of_string(text, prec);
}

Complex parse_complex(const char* re, const char* im, prec_t prec, const char* what) {
    Real r = parse_scalar(re, prec, what);
    Real i = im == nullptr || *im == '\0' ? Real(prec) : parse_scalar(im, prec, what);
    return Complex(std::move(r), std::move(i));
}

OrderedJson eval_result_json(const Complex& value, const Real& err, uint32_t terms) {
    OrderedJson j;
    j["re"] = format_real(value.re);
    j["im"] = format_real(value.im);
    j["abs_err_bound"] = format_real(err, 6);
    j["terms"] = terms;
    return j;
}

void emit(char** slot, const OrderedJson& j) {
    *slot = dup_string(j.dump(2));
}

} // namespace

extern "C" {

const char* dwv_version(void) { return "1.0.0"; }

const char* dwv_last_error(void) { return g_last_error.c_str(); }

void dwv_string_free(char* s) { std::free(s); }

/* ---- power series ----------------------------------------------------- */

dwv_status dwv_series_builtin(const char* name, dwv_series** out) {
    return guarded([&] {
        require(name != nullptr && out != nullptr, "name and out must be non-null");
        *out = new dwv_series{PowerSeries::builtin(name)};
    });
}

dwv_status dwv_series_from_coefficient_file(const char* path, dwv_series** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path and out must be non-null");
        *out = new dwv_series{PowerSeries::from_coefficient_file(path)};
    });
}

void dwv_series_free(dwv_series* s) { delete s; }

dwv_status dwv_series_eval(const dwv_series* s, const char* z_re, const char* z_im,
                           uint64_t prec, char** value_json) {
    return guarded([&] {
        require(s != nullptr && value_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        EvalResult r = eval(s->s, parse_complex(z_re, z_im, p, "z"), p);
        emit(value_json, eval_result_json(r.value, r.tail_bound, r.terms_used));
    });
}

dwv_status dwv_series_delta(const dwv_series* s, unsigned n, const char* eta_re,
                            const char* eta_im, const char* z_re, const char* z_im,
                            uint64_t prec, char** value_json) {
    return guarded([&] {
        require(s != nullptr && value_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        EvalResult r = delta_exact(s->s, n, parse_complex(eta_re, eta_im, p, "eta"),
                                   parse_complex(z_re, z_im, p, "z"), p);
        emit(value_json, eval_result_json(r.value, r.tail_bound, r.terms_used));
    });
}

dwv_status dwv_series_log_derivative(const dwv_series* s, unsigned k, const char* z_re,
                                     const char* z_im, uint64_t prec, char** value_json) {
    return guarded([&] {
        require(s != nullptr && value_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        Complex v = log_derivative(s->s, k, parse_complex(z_re, z_im, p, "z"), p);
        OrderedJson j;
        j["re"] = format_real(v.re);
        j["im"] = format_real(v.im);
        emit(value_json, j);
    });
}

dwv_status dwv_series_order(const dwv_series* s, double* sigma) {
    return guarded([&] {
        require(s != nullptr && sigma != nullptr, "series and out must be non-null");
        *sigma = order_exponent(s->s);
    });
}

dwv_status dwv_series_central_index(const dwv_series* s, const char* r, uint32_t* nu) {
    return guarded([&] {
        require(s != nullptr && nu != nullptr, "series and out must be non-null");
        Real radius = parse_scalar(r, 96, "r");
        require(radius.is_finite() && radius.sign() > 0, "r must be positive");
        *nu = maximal_term(s->s, radius).nu;
    });
}

dwv_status dwv_series_max_modulus(const dwv_series* s, const char* r,
                                  unsigned circle_samples, uint64_t prec, char** value) {
    return guarded([&] {
        require(s != nullptr && value != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        Real radius = parse_scalar(r, p, "r");
        require(radius.is_finite() && radius.sign() > 0, "r must be positive");
        unsigned samples = circle_samples == 0 ? 256 : circle_samples;
        *value = dup_string(format_real(max_modulus(s->s, radius, samples, p)));
    });
}

/* ---- set-partition table ---------------------------------------------- */

dwv_status dwv_stirling_create(unsigned n_max, dwv_stirling** out) {
    return guarded([&] {
        require(out != nullptr, "out must be non-null");
        require(n_max <= 4096, "table size capped at 4096");
        *out = new dwv_stirling{StirlingTable(n_max)};
    });
}

void dwv_stirling_free(dwv_stirling* t) { delete t; }

dwv_status dwv_stirling_entry(const dwv_stirling* t, unsigned n, unsigned m,
                              char** decimal) {
    return guarded([&] {
        require(t != nullptr && decimal != nullptr, "table and out must be non-null");
        *decimal = dup_string(t->t.entry(n, m).get_str());
    });
}

dwv_status dwv_stirling_row_sum(const dwv_stirling* t, unsigned n, char** decimal) {
    return guarded([&] {
        require(t != nullptr && decimal != nullptr, "table and out must be non-null");
        *decimal = dup_string(t->t.row_sum(n).get_str());
    });
}

dwv_status dwv_stirling_check_generating(const dwv_stirling* t, unsigned n, int* ok) {
    return guarded([&] {
        require(t != nullptr && ok != nullptr, "table and out must be non-null");
        *ok = t->t.check_generating_identity(n) ? 1 : 0;
    });
}

dwv_status dwv_stirling_check_convolution(const dwv_stirling* t, unsigned n, unsigned m,
                                          unsigned r, int* ok) {
    return guarded([&] {
        require(t != nullptr && ok != nullptr, "table and out must be non-null");
        *ok = t->t.check_cross_recurrence(n, m, r) ? 1 : 0;
    });
}

dwv_status dwv_stirling_weights(const dwv_stirling* t, unsigned n, unsigned k_max,
                                const char* eta_re, const char* eta_im, uint64_t prec,
                                char** json_array) {
    return guarded([&] {
        require(t != nullptr && json_array != nullptr, "table and out must be non-null");
        prec_t p = to_prec(prec);
        Complex eta = parse_complex(eta_re, eta_im, p, "eta");
        std::vector<Complex> w = expansion_weights(t->t, n, k_max, eta, p);
        OrderedJson arr = OrderedJson::array();
        for (size_t i = 0; i < w.size(); ++i) {
            OrderedJson row;
            row["k"] = n + i;
            row["weight"] = complex_json(w[i]);
            arr.push_back(std::move(row));
        }
        emit(json_array, arr);
    });
}

/* ---- expansion and growth checks -------------------------------------- */

dwv_status dwv_verify_expansion(const dwv_series* s, unsigned n, unsigned N,
                                const char* eta_re, const char* eta_im, double rmin,
                                double rmax, unsigned points, double eps, uint64_t prec,
                                char** report_json) {
    return guarded([&] {
        require(s != nullptr && report_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        DecayReport rep = verify_expansion(s->s, n, N, parse_complex(eta_re, eta_im, p, "eta"),
                                           geometric_grid(rmin, rmax, points), eps, p);
        emit(report_json, to_json(rep));
    });
}

dwv_status dwv_verify_first_difference(const dwv_series* s, unsigned N, const char* eta_re,
                                       const char* eta_im, double rmin, double rmax,
                                       unsigned points, double eps, uint64_t prec,
                                       char** report_json) {
    return guarded([&] {
        require(s != nullptr && report_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        DecayReport rep =
            verify_first_difference(s->s, N, parse_complex(eta_re, eta_im, p, "eta"),
                                    geometric_grid(rmin, rmax, points), eps, p);
        emit(report_json, to_json(rep));
    });
}

dwv_status dwv_wv_profile(const dwv_series* s, double rmin, double rmax, unsigned points,
                          unsigned circle_samples, uint64_t prec, char** report_json) {
    return guarded([&] {
        require(s != nullptr && report_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        unsigned samples = circle_samples == 0 ? 256 : circle_samples;
        WVProfile rep = wv_profile(s->s, geometric_grid(rmin, rmax, points), samples, p);
        emit(report_json, to_json(rep));
    });
}

dwv_status dwv_check_pointwise(const dwv_series* s, unsigned k, double eps, double rmin,
                               double rmax, unsigned points, uint64_t prec,
                               char** report_json) {
    return guarded([&] {
        require(s != nullptr && report_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        std::vector<PointwiseRow> rows =
            check_pointwise_bounds(s->s, k, eps, geometric_grid(rmin, rmax, points), p);
        emit(report_json, pointwise_json(s->s.name(), k, eps, rows));
    });
}

dwv_status dwv_verify_wv_difference(const dwv_series* s, unsigned k, double rmin,
                                    double rmax, unsigned points, double eps,
                                    uint64_t prec, char** report_json) {
    return guarded([&] {
        require(s != nullptr && report_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        WVDifferenceReport rep =
            verify_wv_difference(s->s, k, geometric_grid(rmin, rmax, points), eps, p);
        emit(report_json, to_json(rep));
    });
}

dwv_status dwv_gamma_counterexample(const char* const* z_values, size_t n_z,
                                    uint64_t prec, char** report_json) {
    return guarded([&] {
        require(z_values != nullptr && report_json != nullptr,
                "z values and out must be non-null");
        require(n_z >= 1 && n_z <= 256, "between 1 and 256 sample points");
        prec_t p = to_prec(prec);
        std::vector<Real> zs;
        zs.reserve(n_z);
        for (size_t i = 0; i < n_z; ++i) zs.push_back(parse_scalar(z_values[i], p, "z"));
        emit(report_json, to_json(gamma_counterexample(zs, p)));
    });
}

dwv_status dwv_growth_fit_series(const dwv_series* s, double rmin, double rmax,
                                 unsigned points, unsigned circle_samples, uint64_t prec,
                                 char** report_json) {
    return guarded([&] {
        require(s != nullptr && report_json != nullptr, "series and out must be non-null");
        prec_t p = to_prec(prec);
        unsigned samples = circle_samples == 0 ? 256 : circle_samples;
        GrowthFit fit = growth_fit_series(s->s, geometric_grid(rmin, rmax, points), samples, p);
        emit(report_json, to_json(fit));
    });
}

/* ---- difference equations --------------------------------------------- */

dwv_status dwv_equation_parse(const char* json_text, const char* name,
                              dwv_equation** out) {
    return guarded([&] {
        require(json_text != nullptr && out != nullptr, "text and out must be non-null");
        *out = new dwv_equation{
            parse_equation(json_text, name == nullptr ? "equation" : name)};
    });
}

dwv_status dwv_equation_parse_file(const char* path, dwv_equation** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "path and out must be non-null");
        *out = new dwv_equation{parse_equation_file(path)};
    });
}

void dwv_equation_free(dwv_equation* eq) { delete eq; }

dwv_status dwv_equation_polygon(const dwv_equation* eq, char** report_json) {
    return guarded([&] {
        require(eq != nullptr && report_json != nullptr, "equation and out must be non-null");
        emit(report_json, to_json(newton_polygon(eq->eq)));
    });
}

dwv_status dwv_equation_recurrence(const dwv_equation* eq, char** report_json) {
    return guarded([&] {
        require(eq != nullptr && report_json != nullptr, "equation and out must be non-null");
        BinomialRecurrence rec = binomial_recurrence(eq->eq);
        OrderedJson j;
        j["name"] = eq->eq.name;
        j["t_min"] = rec.t_min;
        j["t_max"] = rec.t_max;
        j["span"] = rec.span();
        OrderedJson arr = OrderedJson::array();
        for (const auto& [t, poly] : rec.terms) {
            OrderedJson row;
            row["t"] = t;
            row["poly"] = poly.to_string("m");
            arr.push_back(std::move(row));
        }
        j["terms"] = std::move(arr);
        emit(report_json, j);
    });
}

dwv_status dwv_equation_solve(const dwv_equation* eq, unsigned terms, unsigned margin,
                              uint64_t prec, dwv_solution** out) {
    return guarded([&] {
        require(eq != nullptr && out != nullptr, "equation and out must be non-null");
        require(terms <= (1u << 20), "coefficient count capped at 2^20");
        prec_t p = to_prec(prec);
        BinomialRecurrence rec = binomial_recurrence(eq->eq);
        *out = new dwv_solution{solve_minimal(rec, terms, margin, p)};
    });
}

void dwv_solution_free(dwv_solution* sol) { delete sol; }

dwv_status dwv_solution_info(const dwv_solution* sol, char** report_json) {
    return guarded([&] {
        require(sol != nullptr && report_json != nullptr, "solution and out must be non-null");
        emit(report_json, to_json(sol->sol));
    });
}

dwv_status dwv_solution_size(const dwv_solution* sol, size_t* n) {
    return guarded([&] {
        require(sol != nullptr && n != nullptr, "solution and out must be non-null");
        *n = sol->sol.b.size();
    });
}

dwv_status dwv_solution_coefficient(const dwv_solution* sol, size_t index,
                                    char** decimal) {
    return guarded([&] {
        require(sol != nullptr && decimal != nullptr, "solution and out must be non-null");
        require(index < sol->sol.b.size(), "coefficient index out of range");
        *decimal = dup_string(format_real(sol->sol.b[index]));
    });
}

dwv_status dwv_solution_eval(const dwv_solution* sol, const char* z_re, const char* z_im,
                             uint64_t prec, char** value_json) {
    return guarded([&] {
        require(sol != nullptr && value_json != nullptr, "solution and out must be non-null");
        prec_t p = to_prec(prec);
        NewtonEval r = eval_newton(sol->sol.b, parse_complex(z_re, z_im, p, "z"), p);
        emit(value_json, eval_result_json(r.value, r.abs_err, r.terms_used));
    });
}

dwv_status dwv_solution_max_modulus(const dwv_solution* sol, const char* r,
                                    uint64_t scan_prec, char** value) {
    return guarded([&] {
        require(sol != nullptr && value != nullptr, "solution and out must be non-null");
        prec_t p = to_prec(scan_prec);
        Real radius = parse_scalar(r, p, "r");
        require(radius.is_finite() && radius.sign() > 0, "r must be positive");
        *value = dup_string(format_real(solution_max_modulus(sol->sol.b, radius, p)));
    });
}

dwv_status dwv_solution_growth_fit(const dwv_solution* sol, double rmin, double rmax,
                                   unsigned points, uint64_t scan_prec,
                                   char** report_json) {
    return guarded([&] {
        require(sol != nullptr && report_json != nullptr, "solution and out must be non-null");
        prec_t p = to_prec(scan_prec);
        GrowthFit fit = growth_fit_solution(sol->sol.b, geometric_grid(rmin, rmax, points), p);
        emit(report_json, to_json(fit));
    });
}

dwv_status dwv_verify_growth(const dwv_equation* eq, unsigned terms, double rmin,
                             double rmax, unsigned points, uint64_t prec,
                             char** report_json) {
    return guarded([&] {
        require(eq != nullptr && report_json != nullptr, "equation and out must be non-null");
        require(terms <= (1u << 20), "coefficient count capped at 2^20");
        prec_t p = to_prec(prec);
        GrowthVerdict v =
            verify_predicted_growth(eq->eq, terms, geometric_grid(rmin, rmax, points), p);
        emit(report_json, to_json(v));
    });
}

} // extern "C"
