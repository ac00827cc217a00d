// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/stirling.hpp"

#include "core/errors.hpp"
#include "core/rational_poly.hpp"

namespace deltawv {

namespace {
const BigInt kZeroBig(0);
}

StirlingTable::StirlingTable(unsigned n_max) : n_max_(n_max) {
    rows_.resize(n_max + 1);
    rows_[0] = {BigInt(1)};
    for (unsigned n = 1; n <= n_max; ++n) {
        rows_[n].resize(n + 1);
        rows_[n][0] = 0;
        for (unsigned m = 1; m <= n; ++m) {
            // S(n,m) = m*S(n-1,m) + S(n-1,m-1)
            BigInt v = rows_[n - 1][m - 1];
            if (m <= n - 1) v += BigInt(m) * rows_[n - 1][m];
            rows_[n][m] = v;
        }
    }
}

const BigInt& StirlingTable::entry(unsigned n, unsigned m) const {
    if (n > n_max_)
        raise(ErrorCode::kInvalidArgument,
              "row " + std::to_string(n) + " exceeds table size " + std::to_string(n_max_));
    if (m > n) return kZeroBig;
    return rows_[n][m];
}

BigInt StirlingTable::row_sum(unsigned n) const {
    if (n > n_max_) raise(ErrorCode::kInvalidArgument, "row exceeds table size");
    BigInt s(0);
    for (const BigInt& v : rows_[n]) s += v;
    return s;
}

bool StirlingTable::check_generating_identity(unsigned n) const {
    if (n > n_max_) raise(ErrorCode::kInvalidArgument, "row exceeds table size");
    RationalPoly falling = RationalPoly::constant(Rational(1));
    RationalPoly x({Rational(0), Rational(1)});
    RationalPoly sum;
    for (unsigned m = 0; m <= n; ++m) {
        if (m > 0) falling = falling * (x + RationalPoly::constant(Rational(1l - long(m))));
        sum = sum + RationalPoly::constant(Rational(entry(n, m))) * falling;
    }
    std::vector<Rational> mono(n + 1, Rational(0));
    mono[n] = 1;
    return sum == RationalPoly(std::move(mono));
}

bool StirlingTable::check_cross_recurrence(unsigned n, unsigned m, unsigned r) const {
    if (r > m || m > n || n > n_max_)
        raise(ErrorCode::kInvalidArgument, "convolution check needs r <= m <= n <= table size");
    BigInt lhs = binomial(m, r) * entry(n, m);
    BigInt rhs(0);
    for (unsigned k = m - r; k <= n - r; ++k)
        rhs += binomial(n, k) * entry(n - k, r) * entry(k, m - r);
    return lhs == rhs;
}

std::vector<Rational> expansion_scalars(const StirlingTable& t, unsigned n, unsigned k_max) {
    if (n < 1 || k_max < n || k_max > t.n_max())
        raise(ErrorCode::kInvalidArgument, "scalar range needs 1 <= n <= k_max <= table size");
    BigInt nfact = factorial(n);
    std::vector<Rational> out;
    out.reserve(k_max - n + 1);
    for (unsigned k = n; k <= k_max; ++k) {
        Rational q(nfact * t.entry(k, n), factorial(k));
        q.canonicalize();
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<QComplex> expansion_weights_exact(const StirlingTable& t, unsigned n,
                                              unsigned k_max, const QComplex& eta) {
    std::vector<Rational> scalars = expansion_scalars(t, n, k_max);
    QComplex etapow = qpow(eta, n);
    std::vector<QComplex> out;
    out.reserve(scalars.size());
    for (unsigned i = 0; i < scalars.size(); ++i) {
        out.push_back(scalars[i] * etapow);
        etapow = etapow * eta;
    }
    return out;
}

std::vector<Complex> expansion_weights(const StirlingTable& t, unsigned n, unsigned k_max,
                                       const Complex& eta, prec_t prec) {
    std::vector<Rational> scalars = expansion_scalars(t, n, k_max);
    prec_t w = clamp_prec(prec + 16);
    Complex ep(eta.re.round_to(w), eta.im.round_to(w));
    Complex etapow = Complex::of_long(1, w);
    for (unsigned j = 0; j < n; ++j) etapow = mul_p(etapow, ep, w);
    std::vector<Complex> out;
    out.reserve(scalars.size());
    for (unsigned i = 0; i < scalars.size(); ++i) {
        Real s = to_real(scalars[i], w);
        out.push_back(Complex(s * etapow.re, s * etapow.im).round_to(prec));
        etapow = mul_p(etapow, ep, w);
    }
    return out;
}

} // namespace deltawv
