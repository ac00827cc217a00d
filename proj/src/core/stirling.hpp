// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_STIRLING_HPP
#define DELTAWV_CORE_STIRLING_HPP

#include "core/complexval.hpp"
#include "core/rational.hpp"

#include <vector>

namespace deltawv {

// Exact triangle of set-partition counts S(n, m): the number of ways to
// split an n-element set into m nonempty blocks. Row 0 and column 0 are kept
// (S(0,0) = 1, S(n,0) = 0 for n >= 1) so convolution identities hold at the
// edges without special cases.
class StirlingTable {
public:
    explicit StirlingTable(unsigned n_max);

    unsigned n_max() const { return n_max_; }

    // 0 when m > n; kInvalidArgument when n exceeds the table size.
    const BigInt& entry(unsigned n, unsigned m) const;

    // Count of all set partitions of n elements (row sum).
    BigInt row_sum(unsigned n) const;

    // x^n == sum_m S(n,m) * x(x-1)...(x-m+1), checked as an exact
    // polynomial identity.
    bool check_generating_identity(unsigned n) const;

    // C(m,r) S(n,m) == sum_{k=m-r}^{n-r} C(n,k) S(n-k,r) S(k,m-r),
    // checked in exact integer arithmetic. Requires r <= m <= n.
    bool check_cross_recurrence(unsigned n, unsigned m, unsigned r) const;

private:
    unsigned n_max_;
    std::vector<std::vector<BigInt>> rows_;
};

// Scalars q_k = n! * S(k, n) / k! for k = n..k_max: the factors that weight
// k-th log-derivative samples in an n-th difference quotient.
std::vector<Rational> expansion_scalars(const StirlingTable& t, unsigned n, unsigned k_max);

// q_k * eta^k, exact.
std::vector<QComplex> expansion_weights_exact(const StirlingTable& t, unsigned n,
                                              unsigned k_max, const QComplex& eta);

// q_k * eta^k, rounded to prec.
std::vector<Complex> expansion_weights(const StirlingTable& t, unsigned n, unsigned k_max,
                                       const Complex& eta, prec_t prec);

} // namespace deltawv

#endif
