// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0
//
// Entire functions given by a Taylor coefficient rule. A rule must be
// deterministic per (index, precision); caching inside a rule is
// synchronized so series values can be shared across threads.

#ifndef DELTAWV_CORE_POWER_SERIES_HPP
#define DELTAWV_CORE_POWER_SERIES_HPP

#include "core/rational.hpp"
#include "core/rational_poly.hpp"
#include "core/real.hpp"

#include <memory>
#include <optional>
#include <string>

namespace deltawv {

class CoeffSource {
public:
    virtual ~CoeffSource() = default;

    // n-th Taylor coefficient rounded to prec.
    virtual Real coeff(uint32_t n, prec_t prec) const = 0;

    // a_{n+1}/a_n as an exact rational, when the rule has one and a_n != 0.
    virtual std::optional<Rational> term_ratio(uint32_t /*n*/) const { return std::nullopt; }

    virtual const RationalPoly* as_polynomial() const { return nullptr; }

    // Nearest zero of f on (0, inf) to r, NaN when none are known.
    virtual double nearest_positive_zero(double /*r*/) const;
};

struct SeriesInfo {
    std::string name;
    std::optional<Rational> order_hint;
    bool nonneg_coeffs = false;
};

class PowerSeries {
public:
    // Known names: bessel_i0_sqrt, cos_sqrt, exp, recip_gamma,
    // poly:<c0,c1,...> (rational entries, optional [] around the list).
    // Anything else raises kUnknownName.
    static PowerSeries builtin(const std::string& name);

    // JSON array of decimal strings, ascending degree.
    static PowerSeries from_coefficient_file(const std::string& path);

    static PowerSeries from_rational_poly(RationalPoly p, std::string name = "");

    const std::string& name() const { return info_.name; }
    const std::optional<Rational>& order_hint() const { return info_.order_hint; }
    bool nonneg_coeffs() const { return info_.nonneg_coeffs; }

    Real coeff(uint32_t n, prec_t prec) const { return src_->coeff(n, prec); }
    std::optional<Rational> term_ratio(uint32_t n) const { return src_->term_ratio(n); }
    const RationalPoly* as_polynomial() const { return src_->as_polynomial(); }
    double nearest_positive_zero(double r) const { return src_->nearest_positive_zero(r); }

    // Positive-axis sampling policy: a radius is skipped when it sits within
    // 0.05*r of a zero of f on the positive axis.
    bool excluded_at(double r) const;

    // Series of the k-th derivative: b_n = a_{n+k} (n+k)!/n!.
    PowerSeries derivative(unsigned k) const;

private:
    PowerSeries(std::shared_ptr<const CoeffSource> src, SeriesInfo info)
        : src_(std::move(src)), info_(std::move(info)) {}

    std::shared_ptr<const CoeffSource> src_;
    SeriesInfo info_;
};

} // namespace deltawv

#endif
