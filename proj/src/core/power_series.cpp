// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/power_series.hpp"

#include "core/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

namespace deltawv {

double CoeffSource::nearest_positive_zero(double) const {
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// a_n = 1/(n!)^2; I0(2*sqrt(z)); order 1/2.
class BesselI0SqrtSource final : public CoeffSource {
public:
    Real coeff(uint32_t n, prec_t prec) const override {
        BigInt f = factorial(n);
        Real r(prec);
        mpfr_set_z(r.raw(), f.get_mpz_t(), kRnd);
        mpfr_sqr(r.raw(), r.raw(), kRnd);
        mpfr_si_div(r.raw(), 1, r.raw(), kRnd);
        return r;
    }
    std::optional<Rational> term_ratio(uint32_t n) const override {
        BigInt d = BigInt(n + 1) * BigInt(n + 1);
        return Rational(1, d);
    }
};

// a_n = (-1)^n/(2n)!; cos(sqrt(z)); order 1/2; zeros ((k+1/2)pi)^2.
class CosSqrtSource final : public CoeffSource {
public:
    Real coeff(uint32_t n, prec_t prec) const override {
        BigInt f = factorial(2ul * n);
        if (n % 2 == 1) f = -f;
        Real r(prec);
        mpfr_set_z(r.raw(), f.get_mpz_t(), kRnd);
        mpfr_si_div(r.raw(), 1, r.raw(), kRnd);
        return r;
    }
    std::optional<Rational> term_ratio(uint32_t n) const override {
        BigInt d = BigInt(2ul * n + 1) * BigInt(2ul * n + 2);
        return Rational(-1, d);
    }
    double nearest_positive_zero(double r) const override {
        if (!(r > 0)) return 0.25 * M_PI * M_PI;
        double k = std::round(std::sqrt(r) / M_PI - 0.5);
        if (k < 0) k = 0;
        double best = std::numeric_limits<double>::infinity();
        for (double j = k - 1; j <= k + 1; ++j) {
            if (j < 0) continue;
            double root = (j + 0.5) * M_PI;
            double zero = root * root;
            if (std::fabs(zero - r) < std::fabs(best - r)) best = zero;
        }
        return best;
    }
};

// a_n = 1/n!; order 1.
class ExpSource final : public CoeffSource {
public:
    Real coeff(uint32_t n, prec_t prec) const override {
        BigInt f = factorial(n);
        Real r(prec);
        mpfr_set_z(r.raw(), f.get_mpz_t(), kRnd);
        mpfr_si_div(r.raw(), 1, r.raw(), kRnd);
        return r;
    }
    std::optional<Rational> term_ratio(uint32_t n) const override {
        return Rational(1, BigInt(n + 1));
    }
};

// Taylor coefficients of 1/Gamma at 0: c_0 = 0, c_1 = 1, c_2 = euler, and
//   (k-1) c_k = euler*c_{k-1} - zeta(2) c_{k-2} + zeta(3) c_{k-3} - ...
// which is the linear recurrence produced by differentiating the log-series
// of 1/Gamma. The sum cancels down to ~1/Gamma(k), so the chain is run with
// ~log2(Gamma(n)) extra bits.
//
// The chain for indices <= n is a deterministic function of (prec, block(n))
// where block(n) rounds n up to a power of two; blocks are cached.
class RecipGammaSource final : public CoeffSource {
public:
    static constexpr uint32_t kMaxIndex = 1u << 15;

    Real coeff(uint32_t n, prec_t prec) const override {
        if (n == 0) return Real(prec);
        if (n > kMaxIndex)
            raise(ErrorCode::kNonConvergence,
                  "recip_gamma coefficient index beyond supported depth");
        uint32_t block = 256;
        while (block < n + 1) block *= 2;
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(prec, block);
        auto it = chains_.find(key);
        if (it == chains_.end()) it = chains_.emplace(key, build_chain(prec, block)).first;
        return it->second[n].round_to(prec);
    }

private:
    static std::vector<Real> build_chain(prec_t prec, uint32_t depth) {
        // log2 Gamma(depth) upper estimate
        double lg = std::lgamma(static_cast<double>(depth)) / std::log(2.0);
        prec_t w = clamp_prec(prec + static_cast<prec_t>(1.1 * lg) + 64);
        std::fprintf(stderr, "[chain] prec=%ld depth=%u w=%ld\n", long(prec), depth, long(w));
        std::vector<Real> zeta;
        zeta.reserve(depth);
        zeta.emplace_back(w); // unused slots 0,1
        zeta.emplace_back(w);
        for (uint32_t j = 2; j < depth; ++j) zeta.push_back(Real::zeta_ui(j, w));
        Real gamma = Real::euler(w);
        std::vector<Real> c;
        c.reserve(depth + 1);
        c.emplace_back(w);                 // c_0 = 0
        c.push_back(Real::of_long(1, w));  // c_1 = 1
        for (uint32_t k = 2; k <= depth; ++k) {
            Real acc = mul_p(gamma, c[k - 1], w);
            for (uint32_t j = 2; j <= k - 1; ++j) {
                Real t = mul_p(zeta[j], c[k - j], w);
                if (j % 2 == 0)
                    acc -= t;
                else
                    acc += t;
            }
            c.push_back(div_p(acc, Real::of_long(static_cast<long>(k) - 1, w), w));
        }
        return c;
    }

    mutable std::mutex mu_;
    mutable std::map<std::pair<prec_t, uint32_t>, std::vector<Real>> chains_;
};

class PolySource final : public CoeffSource {
public:
    explicit PolySource(RationalPoly p) : p_(std::move(p)) {}

    Real coeff(uint32_t n, prec_t prec) const override {
        return to_real(p_.coeff(n), prec);
    }
    const RationalPoly* as_polynomial() const override { return &p_; }

private:
    RationalPoly p_;
};

// b_n = a_{n+k} (n+k)!/n!
class DerivSource final : public CoeffSource {
public:
    DerivSource(std::shared_ptr<const CoeffSource> base, unsigned k)
        : base_(std::move(base)), k_(k) {}

    Real coeff(uint32_t n, prec_t prec) const override {
        Real a = base_->coeff(n + k_, prec + 32);
        BigInt rising(1);
        for (unsigned j = 1; j <= k_; ++j) rising *= BigInt(n + j);
        Real r(prec);
        mpfr_mul_z(r.raw(), a.raw(), rising.get_mpz_t(), kRnd);
        return r;
    }
    std::optional<Rational> term_ratio(uint32_t n) const override {
        auto base = base_->term_ratio(n + k_);
        if (!base) return std::nullopt;
        return *base * Rational(BigInt(n + k_ + 1), BigInt(n + 1));
    }
    unsigned order() const { return k_; }
    const CoeffSource* base() const { return base_.get(); }
    std::shared_ptr<const CoeffSource> base_ptr() const { return base_; }

private:
    std::shared_ptr<const CoeffSource> base_;
    unsigned k_;
};

bool poly_nonneg(const RationalPoly& p) {
    for (const auto& c : p.coeffs())
        if (c < 0) return false;
    return true;
}

RationalPoly parse_poly_list(const std::string& body) {
    std::string s = body;
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            raise(ErrorCode::kParseError, "unbalanced brackets in poly spec");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<Rational> cs;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        if (!tok.empty()) cs.push_back(parse_rational(tok));
        else if (comma != std::string::npos || !cs.empty())
            raise(ErrorCode::kParseError, "empty entry in poly spec");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return RationalPoly(std::move(cs));
}

} // namespace

PowerSeries PowerSeries::builtin(const std::string& name) {
    if (name == "bessel_i0_sqrt") {
        return PowerSeries(std::make_shared<BesselI0SqrtSource>(),
                           SeriesInfo{name, Rational(1, 2), true});
    }
    if (name == "cos_sqrt") {
        return PowerSeries(std::make_shared<CosSqrtSource>(),
                           SeriesInfo{name, Rational(1, 2), false});
    }
    if (name == "exp") {
        return PowerSeries(std::make_shared<ExpSource>(), SeriesInfo{name, Rational(1), true});
    }
    if (name == "recip_gamma") {
        return PowerSeries(std::make_shared<RecipGammaSource>(),
                           SeriesInfo{name, Rational(1), false});
    }
    if (name.rfind("poly:", 0) == 0) {
        RationalPoly p = parse_poly_list(name.substr(5));
        return from_rational_poly(std::move(p), name);
    }
    raise(ErrorCode::kUnknownName, "unknown series name: '" + name + "'");
}

PowerSeries PowerSeries::from_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::kIoError, "cannot open coefficient file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise(ErrorCode::kParseError, std::string("coefficient file is not valid JSON: ") + e.what());
    }
    if (!j.is_array())
        raise(ErrorCode::kParseError, "coefficient file must be a JSON array of decimal strings");
    std::vector<Rational> cs;
    cs.reserve(j.size());
    for (const auto& item : j) {
        if (item.is_string())
            cs.push_back(parse_rational(item.get<std::string>()));
        else if (item.is_number_integer())
            cs.push_back(Rational(static_cast<long>(item.get<int64_t>())));
        else
            raise(ErrorCode::kParseError,
                  "coefficient entries must be decimal strings (or integers)");
    }
    return from_rational_poly(RationalPoly(std::move(cs)), "file:" + path);
}

PowerSeries PowerSeries::from_rational_poly(RationalPoly p, std::string name) {
    if (name.empty()) {
        name = "poly:[";
        const auto& cs = p.coeffs();
        for (size_t i = 0; i < cs.size(); ++i)
            name += (i ? "," : "") + cs[i].get_str();
        name += "]";
    }
    bool nonneg = poly_nonneg(p);
    return PowerSeries(std::make_shared<PolySource>(std::move(p)),
                       SeriesInfo{std::move(name), Rational(0), nonneg});
}

bool PowerSeries::excluded_at(double r) const {
    double zero = nearest_positive_zero(r);
    if (std::isnan(zero)) return false;
    return std::fabs(r - zero) <= 0.05 * r;
}

PowerSeries PowerSeries::derivative(unsigned k) const {
    if (k == 0) return *this;
    if (const RationalPoly* p = as_polynomial()) {
        RationalPoly d = *p;
        for (unsigned j = 0; j < k; ++j) d = d.derivative();
        return from_rational_poly(std::move(d),
                                  "D" + std::to_string(k) + "[" + info_.name + "]");
    }
    SeriesInfo info = info_;
    info.name = "D" + std::to_string(k) + "[" + info_.name + "]";
    // cos_sqrt derivatives are sign-mixed already; nonneg survives otherwise
    if (auto d = std::dynamic_pointer_cast<const DerivSource>(src_)) {
        return PowerSeries(std::make_shared<DerivSource>(d->base_ptr(), d->order() + k), info);
    }
    return PowerSeries(std::make_shared<DerivSource>(src_, k), info);
}

} // namespace deltawv
