// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/real.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

namespace deltawv {

prec_t clamp_prec(prec_t p) {
    if (p < kMinPrec) return kMinPrec;
    if (p > (prec_t(1) << 24)) raise(ErrorCode::kInvalidArgument, "precision too large");
    return p;
}

static prec_t join_prec(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}

Real Real::of_long(long x, prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, kRnd);
    return r;
}

Real Real::of_double(double x, prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, kRnd);
    return r;
}

Real Real::of_mpz(const mpz_class& x, prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), kRnd);
    return r;
}

Real Real::of_mpq(const mpq_class& x, prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), kRnd);
    return r;
}

Real Real::of_string(const std::string& s, prec_t prec) {
    Real r(prec);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, kRnd) != 0)
        raise(ErrorCode::kParseError, "bad decimal literal: '" + s + "'");
    return r;
}

Real Real::pi(prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, kRnd);
    return r;
}

Real Real::euler(prec_t prec) {
    Real r(prec);
    mpfr_const_euler(r.v_, kRnd);
    return r;
}

Real Real::zeta_ui(unsigned long n, prec_t prec) {
    Real r(prec);
    mpfr_zeta_ui(r.v_, n, kRnd);
    return r;
}

Real Real::pow2(long e) {
    Real r(kMinPrec);
    mpfr_set_si_2exp(r.v_, 1, e, kRnd);
    return r;
}

Real Real::nan(prec_t prec) {
    Real r(prec);
    mpfr_set_nan(r.v_);
    return r;
}

Real Real::round_to(prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, kRnd);
    return r;
}

mpq_class Real::to_mpq_exact() const {
    if (!is_finite()) raise(ErrorCode::kInvalidArgument, "non-finite value has no rational form");
    if (is_zero()) return mpq_class(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= mpq_class(p2);
    } else {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= mpq_class(p2);
    }
    q.canonicalize();
    return q;
}

std::string Real::to_string(size_t digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return "0";
    if (digits == 0)
        digits = static_cast<size_t>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 2;
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, kRnd);
    std::string mant(raw);
    mpfr_free_str(raw);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string ds = neg ? mant.substr(1) : mant;
    // strip trailing zeros but keep at least one digit
    size_t last = ds.find_last_not_of('0');
    ds = ds.substr(0, std::max<size_t>(last + 1, 1));
    std::string out = neg ? "-" : "";
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

long Real::ilog2_abs() const {
    if (is_zero() || !is_finite()) return -(1L << 30);
    return static_cast<long>(mpfr_get_exp(v_)) - 1;
}

Real operator+(const Real& a, const Real& b) { return add_p(a, b, join_prec(a, b)); }
Real operator-(const Real& a, const Real& b) {
    Real r(join_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}
Real operator*(const Real& a, const Real& b) { return mul_p(a, b, join_prec(a, b)); }
Real operator/(const Real& a, const Real& b) { return div_p(a, b, join_prec(a, b)); }

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, kRnd);
    return r;
}

Real add_p(const Real& a, const Real& b, prec_t prec) {
    Real r(prec);
    mpfr_add(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real mul_p(const Real& a, const Real& b, prec_t prec) {
    Real r(prec);
    mpfr_mul(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real div_p(const Real& a, const Real& b, prec_t prec) {
    Real r(prec);
    mpfr_div(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

#define DELTAWV_UNARY(name, fn)                  \
    Real name(const Real& x) {                   \
        Real r(x.prec());                        \
        fn(r.raw(), x.raw(), kRnd);              \
        return r;                                \
    }

DELTAWV_UNARY(abs, mpfr_abs)
DELTAWV_UNARY(sqrt, mpfr_sqrt)
DELTAWV_UNARY(log, mpfr_log)
DELTAWV_UNARY(log2, mpfr_log2)
DELTAWV_UNARY(exp, mpfr_exp)
DELTAWV_UNARY(cos, mpfr_cos)
DELTAWV_UNARY(sin, mpfr_sin)

#undef DELTAWV_UNARY

Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd);
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), kRnd);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), kRnd);
    return r;
}

Real pow_si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, kRnd);
    return r;
}

Real mul_2si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, kRnd);
    return r;
}

Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

} // namespace deltawv
