// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/report_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace deltawv {

namespace {

// Integral sample points stay JSON integers; anything else becomes a
// decimal string.
OrderedJson real_or_int(const Real& v) {
    double d = v.to_double();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) <= 9.007199254740992e15) {
        long n = static_cast<long>(d);
        Real back = Real::of_long(n, 64);
        if (!(v < back) && !(v > back)) return OrderedJson(n);
    }
    return OrderedJson(format_real(v));
}

} // namespace

std::string format_real(const Real& v, size_t digits) {
    std::string sci = v.to_string(digits);
    if (sci == "0" || sci == "nan" || sci == "inf" || sci == "-inf") return sci;

    size_t epos = sci.find('e');
    std::string mant = sci.substr(0, epos);
    long expo = std::strtol(sci.c_str() + epos + 1, nullptr, 10);

    bool neg = mant[0] == '-';
    if (neg) mant.erase(0, 1);
    size_t dot = mant.find('.');
    std::string ds = dot == std::string::npos ? mant : mant.substr(0, dot) + mant.substr(dot + 1);

    if (expo < -6 || expo > 20) return sci;

    std::string out = neg ? "-" : "";
    if (expo < 0) {
        out += "0.";
        out.append(size_t(-expo - 1), '0');
        out += ds;
    } else if (size_t(expo) + 1 >= ds.size()) {
        out += ds;
        out.append(size_t(expo) + 1 - ds.size(), '0');
    } else {
        out += ds.substr(0, size_t(expo) + 1) + "." + ds.substr(size_t(expo) + 1);
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

OrderedJson complex_json(const Complex& v, size_t digits) {
    return OrderedJson{{"re", format_real(v.re, digits)}, {"im", format_real(v.im, digits)}};
}

OrderedJson to_json(const DecayReport& rep) {
    OrderedJson j;
    j["f_name"] = rep.f_name;
    j["n"] = rep.n;
    j["N"] = rep.N;
    j["eta"] = complex_json(rep.eta);
    j["eps"] = format_double(rep.eps);
    j["prec"] = long(rep.prec);
    j["sigma"] = format_double(rep.sigma);
    j["claimed_exponent_strong"] = format_double(rep.claimed_exponent_strong);
    j["claimed_exponent_conservative"] = format_double(rep.claimed_exponent_conservative);
    j["fitted_slope"] = format_double(rep.fitted_slope);
    j["fit_r2"] = format_double(rep.fit_r2);
    j["dropped_rows"] = rep.dropped_rows;
    j["status"] = rep.status;
    j["pass"] = rep.pass;
    OrderedJson rows = OrderedJson::array();
    for (const DecayRow& row : rep.rows) {
        OrderedJson r;
        r["r"] = format_real(row.r);
        if (row.dropped) {
            r["dropped"] = true;
            r["drop_reason"] = row.drop_reason;
            rows.push_back(std::move(r));
            continue;
        }
        r["lhs"] = complex_json(row.lhs);
        r["rhs"] = complex_json(row.rhs);
        r["abs_err"] = format_real(row.abs_err);
        r["noise_floor"] = format_real(row.noise_floor);
        r["bound"] = format_real(row.bound);
        r["within_bound"] = row.within_bound;
        r["used_in_fit"] = row.usable;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

OrderedJson to_json(const WVDifferenceReport& rep) {
    OrderedJson j;
    j["f_name"] = rep.f_name;
    j["k"] = rep.k;
    j["eps"] = format_double(rep.eps);
    j["skipped_rows"] = rep.skipped_rows;
    j["pass"] = rep.pass;
    OrderedJson rows = OrderedJson::array();
    for (const WVDiffRow& row : rep.rows) {
        OrderedJson r;
        r["r"] = format_real(row.r);
        r["nu"] = row.nu;
        r["delta_ratio"] = complex_json(row.delta_ratio);
        r["wv_prediction"] = format_real(row.wv_prediction);
        r["rel_err"] = format_real(row.rel_err);
        r["bound"] = format_real(row.bound);
        r["pass"] = row.pass;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

OrderedJson to_json(const GammaReport& rep) {
    OrderedJson j;
    OrderedJson rows = OrderedJson::array();
    for (const GammaRow& row : rep.rows) {
        OrderedJson r;
        r["z"] = real_or_int(row.z);
        r["delta_ratio"] = row.delta_ratio.is_real() ? OrderedJson(format_real(row.delta_ratio.re))
                                                     : complex_json(row.delta_ratio);
        r["identity"] = "1/z-1";
        r["identity_value"] = format_real(row.identity_value);
        r["abs_diff"] = format_real(row.abs_diff);
        r["combined_bound"] = format_real(row.combined_bound);
        r["match"] = row.match;
        r["nu"] = row.nu;
        r["wv_prediction"] = format_real(row.wv_prediction);
        r["wv_rel_err"] = format_real(row.wv_rel_err);
        r["wv_bound"] = format_real(row.wv_bound);
        r["wv_violated"] = row.wv_violated;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["all_match"] = rep.all_match;
    j["wv_failure_exhibited"] = rep.wv_failure_exhibited;
    return j;
}

OrderedJson to_json(const WVProfile& rep) {
    OrderedJson j;
    j["f_name"] = rep.f_name;
    OrderedJson samples = OrderedJson::array();
    for (const WVSample& s : rep.samples) {
        OrderedJson r;
        r["r"] = format_real(s.r);
        r["mu"] = format_real(s.mu);
        r["nu"] = s.nu;
        r["M"] = format_real(s.M);
        samples.push_back(std::move(r));
    }
    j["samples"] = std::move(samples);
    j["order_fit"] = format_double(rep.order_fit);
    j["order_r2"] = format_double(rep.order_r2);
    return j;
}

OrderedJson pointwise_json(const std::string& f_name, unsigned k, double eps,
                           const std::vector<PointwiseRow>& rows) {
    OrderedJson j;
    j["f_name"] = f_name;
    j["k"] = k;
    j["eps"] = format_double(eps);
    OrderedJson out_rows = OrderedJson::array();
    bool all = true;
    for (const PointwiseRow& row : rows) {
        OrderedJson r;
        r["r"] = format_real(row.r);
        if (row.excluded) {
            r["excluded"] = true;
            out_rows.push_back(std::move(r));
            continue;
        }
        r["lhs"] = format_real(row.lhs);
        r["rhs"] = format_real(row.rhs);
        OrderedJson ratios = OrderedJson::array();
        for (const Real& v : row.shift_ratios) ratios.push_back(format_real(v));
        r["shift_ratios"] = std::move(ratios);
        r["shift_lo"] = format_real(row.shift_lo);
        r["shift_hi"] = format_real(row.shift_hi);
        r["pass"] = row.pass;
        all = all && row.pass;
        out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    j["pass"] = all;
    return j;
}

OrderedJson to_json(const NewtonPolygon& poly) {
    OrderedJson j;
    OrderedJson pts = OrderedJson::array();
    for (const auto& [k, d] : poly.points) pts.push_back(OrderedJson::array({k, d}));
    j["points"] = std::move(pts);
    OrderedJson segs = OrderedJson::array();
    for (const PolygonSegment& s : poly.segments) {
        OrderedJson seg;
        seg["slope"] = rational_to_string(s.slope);
        seg["from"] = s.from_k;
        seg["to"] = s.to_k;
        segs.push_back(std::move(seg));
    }
    j["segments"] = std::move(segs);
    OrderedJson orders = OrderedJson::array();
    for (const Rational& q : poly.predicted_orders) orders.push_back(rational_to_string(q));
    j["predicted_orders"] = std::move(orders);
    return j;
}

OrderedJson to_json(const GrowthFit& fit) {
    OrderedJson j;
    j["chi_fit"] = format_double(fit.chi_fit);
    j["L_fit"] = format_double(fit.L_fit);
    j["fit_r2"] = format_double(fit.fit_r2);
    OrderedJson samples = OrderedJson::array();
    for (const auto& [r, logm] : fit.samples) {
        OrderedJson s;
        s["r"] = format_real(r);
        s["log_max_modulus"] = format_real(logm);
        samples.push_back(std::move(s));
    }
    j["samples"] = std::move(samples);
    OrderedJson buckets = OrderedJson::array();
    for (double v : fit.per_decade_L) buckets.push_back(format_double(v));
    j["per_decade_L"] = std::move(buckets);
    j["per_decade_spread"] = format_double(fit.per_decade_spread);
    return j;
}

OrderedJson to_json(const NewtonSolution& sol, size_t coeff_limit) {
    OrderedJson j;
    j["terms"] = sol.b.size();
    j["first_free_index"] = sol.first_free_index;
    j["subspace_dim"] = sol.subspace_dim;
    j["prec"] = long(sol.prec);
    j["stability"] = format_double(sol.stability);
    OrderedJson head = OrderedJson::array();
    for (size_t i = 0; i < sol.b.size() && i < coeff_limit; ++i)
        head.push_back(format_real(sol.b[i]));
    j["leading_coefficients"] = std::move(head);
    return j;
}

OrderedJson to_json(const GrowthVerdict& verdict) {
    OrderedJson j;
    j["polygon"] = to_json(verdict.polygon);
    j["recurrence_span"] = verdict.recurrence_span;
    j["status"] = verdict.status;
    j["pass"] = verdict.pass;
    if (verdict.status == "NO_PREDICTION" || verdict.status == "INCONCLUSIVE") return j;
    j["solution"] = to_json(verdict.solution);
    j["fit"] = to_json(verdict.fit);
    OrderedJson res = OrderedJson::array();
    for (const ResidualSample& s : verdict.residuals) {
        OrderedJson r;
        r["z"] = format_real(s.z);
        r["residual_over_f"] = format_real(s.residual_over_f);
        res.push_back(std::move(r));
    }
    j["residuals"] = std::move(res);
    j["matched_order"] = format_double(verdict.matched_order);
    return j;
}

} // namespace deltawv
