// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DELTAWV_CORE_DIFFERENCE_EQ_HPP
#define DELTAWV_CORE_DIFFERENCE_EQ_HPP

#include "core/fitting.hpp"
#include "core/newton_series.hpp"
#include "core/rational_poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace deltawv {

// sum_k a_k(z) Delta^k f(z) = 0 with exact rational polynomial coefficients
// a_0..a_n; a_n is nonzero and at least two of the a_k are nonzero.
struct DifferenceEquation {
    std::vector<RationalPoly> coeffs;
    QComplex eta{Rational(1), Rational(0)};
    std::string name;

    unsigned order() const { return unsigned(coeffs.size()) - 1; }
};

// {"coeffs": [[...a_0...], [...a_1...], ...], "eta": 1, "name": "..."}.
// Inner lists are ascending polynomial coefficients; entries are integers or
// exact rational/decimal strings. Float tokens raise kParseError, structural
// violations raise kValidationError.
DifferenceEquation parse_equation(const std::string& json_text,
                                  const std::string& fallback_name);
DifferenceEquation parse_equation_file(const std::string& path);

struct PolygonSegment {
    Rational slope;
    unsigned from_k = 0;
    unsigned to_k = 0;
};

struct NewtonPolygon {
    std::vector<std::pair<unsigned, long>> points; // (k, deg a_k), zero polys skipped
    std::vector<PolygonSegment> segments;          // concave-from-above hull, k ascending
    std::vector<Rational> predicted_orders;        // 1 - slope, slopes strictly in (0,1)
};

// Degree diagram of the equation. Each hull slope strictly between 0 and 1
// predicts entire solutions of order 1 - slope; the denominators of those
// orders never exceed the equation order.
NewtonPolygon newton_polygon(const DifferenceEquation& eq);

// Image of the equation on coefficient sequences of f = sum_m b_m C(z,m):
// row M reads sum_t P_t(M) b_{M+t} = 0 for every M >= 0 (entries at negative
// index carry vanishing polynomial factors and are skipped).
struct BinomialRecurrence {
    std::map<long, RationalPoly> terms; // t -> P_t(m)
    long t_min = 0;
    long t_max = 0;

    long span() const { return t_max - t_min; }
};

// Requires unit step. Built by pushing multiplication by z through
// z C(z,m) = (m+1) C(z,m+1) + m C(z,m) on top of Delta^k C(z,m) = C(z,m-k).
BinomialRecurrence binomial_recurrence(const DifferenceEquation& eq);

struct NewtonSolution {
    std::vector<Real> b;           // b_0..b_{terms-1}
    unsigned first_free_index = 0; // normalized so b[first_free_index] = 1
    unsigned subspace_dim = 0;     // 0 for the exact ascending solve
    prec_t prec = 256;
    double stability = 0.0;        // worst relative disagreement between margins
};

// Minimal-growth solution of the recurrence. Span-1 recurrences are solved
// ascending in exact arithmetic (the seed index skips rows whose leading
// coefficient vanishes). Wider spans run the recurrence downward from seeds
// planted above the window; the seed-subspace dimension is raised until runs
// at margin and doubled margin agree to 1e-20 relative on the lower half of
// the window. kMinimalSolutionNotFound when no dimension below the span
// achieves that or a downward pivot vanishes.
NewtonSolution solve_minimal(const BinomialRecurrence& rec, unsigned terms,
                             unsigned start_margin, prec_t prec);

// Circle maximum of a basis solution near radius r: 17 directions on the
// upper half circle, golden-section refined, at z = r e^{i theta} + 1/2 (the
// half offset keeps the sample off integer arguments, where truncated
// binomial sums degenerate).
Real solution_max_modulus(const std::vector<Real>& b, const Real& r, prec_t scan_prec);

GrowthFit growth_fit_solution(const std::vector<Real>& b, const std::vector<Real>& r_grid,
                              prec_t scan_prec);

struct ResidualSample {
    Real z;
    Real residual_over_f;
};

struct GrowthVerdict {
    NewtonPolygon polygon;
    long recurrence_span = 0;
    NewtonSolution solution;
    GrowthFit fit;
    std::vector<ResidualSample> residuals;
    double matched_order = 0.0;
    // PASS | FAIL | NO_PREDICTION (no hull slope in (0,1)) |
    // INCONCLUSIVE (no stable minimal solution)
    std::string status;
    bool pass = false;
};

// End-to-end check that the minimal basis solution grows at a predicted
// order: fitted chi within 0.03 of some predicted order, per-decade scale
// spread at most 5%, and equation residuals at five spot arguments at most
// 1e-15 relative to |f|.
GrowthVerdict verify_predicted_growth(const DifferenceEquation& eq, unsigned terms,
                                      const std::vector<Real>& r_grid, prec_t prec);

} // namespace deltawv

#endif
