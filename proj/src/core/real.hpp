// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0
//
// Arbitrary-precision real scalar on top of MPFR. Every value carries its
// own precision; binary operations round once, to the wider of the two
// operand precisions, so the relative error of a single operation is below
// 2^(1-precision).

#ifndef DELTAWV_CORE_REAL_HPP
#define DELTAWV_CORE_REAL_HPP

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace deltawv {

using prec_t = mpfr_prec_t;

inline constexpr prec_t kMinPrec = 64;
inline constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

prec_t clamp_prec(prec_t p);

class Real {
public:
    explicit Real(prec_t prec = kMinPrec) { mpfr_init2(v_, clamp_prec(prec)); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, kRnd); }
    Real(Real&& o) noexcept { mpfr_init2(v_, kMinPrec); mpfr_swap(v_, o.v_); }
    ~Real() { mpfr_clear(v_); }

    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, kRnd); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }

    static Real of_long(long x, prec_t prec);
    static Real of_double(double x, prec_t prec);
    static Real of_mpz(const mpz_class& x, prec_t prec);
    static Real of_mpq(const mpq_class& x, prec_t prec);
    // Accepts plain decimal and scientific notation. Throws kParseError.
    static Real of_string(const std::string& s, prec_t prec);
    static Real pi(prec_t prec);
    static Real euler(prec_t prec);      // Euler-Mascheroni constant
    static Real zeta_ui(unsigned long n, prec_t prec);
    // 2^e at minimal precision; exact.
    static Real pow2(long e);
    static Real nan(prec_t prec);

    prec_t prec() const { return mpfr_get_prec(v_); }
    // Returns a copy rounded to the given precision.
    Real round_to(prec_t prec) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, kRnd); }
    // Exact dyadic decomposition m*2^e; requires a finite value.
    mpq_class to_mpq_exact() const;
    // Normalized scientific decimal, round-trippable at this precision.
    std::string to_string(size_t digits = 0) const;

    // log2(|x|) rounded toward -inf, from the exponent; 0 gives a huge negative.
    long ilog2_abs() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;
    Real& operator+=(const Real& b) { *this = *this + b; return *this; }
    Real& operator-=(const Real& b) { *this = *this - b; return *this; }
    Real& operator*=(const Real& b) { *this = *this * b; return *this; }
    Real& operator/=(const Real& b) { *this = *this / b; return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

private:
    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real log2(const Real& x);
Real exp(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real pow_si(const Real& x, long e);
Real mul_2si(const Real& x, long e); // x * 2^e, exact
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

// a*b and a/b with an explicit result precision (one rounding).
Real mul_p(const Real& a, const Real& b, prec_t prec);
Real div_p(const Real& a, const Real& b, prec_t prec);
Real add_p(const Real& a, const Real& b, prec_t prec);

} // namespace deltawv

#endif
