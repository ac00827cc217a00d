// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0

#include "core/difference_eq.hpp"

#include "core/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace deltawv {

namespace {

Rational entry_to_rational(const nlohmann::json& e) {
    if (e.is_number_integer()) return Rational(long(e.get<long long>()));
    if (e.is_number_float())
        raise(ErrorCode::kParseError,
              "inexact numeric literal; write the value as a string instead");
    if (e.is_string()) return parse_rational(e.get<std::string>());
    raise(ErrorCode::kParseError, "coefficient entries must be integers or strings");
}

} // namespace

DifferenceEquation parse_equation(const std::string& json_text,
                                  const std::string& fallback_name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::kParseError, std::string("equation file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        raise(ErrorCode::kParseError, "expected an object with a \"coeffs\" array");

    DifferenceEquation eq;
    eq.name = j.value("name", fallback_name);
    if (j.contains("eta")) eq.eta = QComplex(entry_to_rational(j["eta"]));

    for (const auto& inner : j["coeffs"]) {
        if (!inner.is_array())
            raise(ErrorCode::kParseError, "each coefficient entry must be a list");
        std::vector<Rational> cs;
        cs.reserve(inner.size());
        for (const auto& e : inner) cs.push_back(entry_to_rational(e));
        eq.coeffs.push_back(RationalPoly(std::move(cs)));
    }

    if (eq.coeffs.size() < 2)
        raise(ErrorCode::kValidationError, "equation needs polynomials a_0..a_n with n >= 1");
    if (eq.coeffs.back().is_zero())
        raise(ErrorCode::kValidationError, "leading polynomial a_n must be nonzero");
    size_t nonzero = 0;
    for (const RationalPoly& p : eq.coeffs)
        if (!p.is_zero()) ++nonzero;
    if (nonzero < 2)
        raise(ErrorCode::kValidationError, "equation needs at least two nonzero polynomials");
    if (eq.eta.is_zero()) raise(ErrorCode::kValidationError, "step must be nonzero");
    return eq;
}

DifferenceEquation parse_equation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::kIoError, "cannot open equation file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) raise(ErrorCode::kIoError, "read failed on " + path);
    return parse_equation(buf.str(), std::filesystem::path(path).stem().string());
}

NewtonPolygon newton_polygon(const DifferenceEquation& eq) {
    NewtonPolygon out;
    for (unsigned k = 0; k < eq.coeffs.size(); ++k)
        if (!eq.coeffs[k].is_zero()) out.points.push_back({k, eq.coeffs[k].degree()});

    std::vector<std::pair<long, long>> hull;
    for (const auto& [k, d] : out.points) {
        std::pair<long, long> p{long(k), d};
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // pop while the middle point sits on or below the chord
            long cross = (b.first - a.first) * (p.second - a.second) -
                         (b.second - a.second) * (p.first - a.first);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        Rational s(BigInt(hull[i + 1].second - hull[i].second),
                   BigInt(hull[i + 1].first - hull[i].first));
        s.canonicalize();
        out.segments.push_back({s, unsigned(hull[i].first), unsigned(hull[i + 1].first)});
        if (s > 0 && s < 1) out.predicted_orders.push_back(Rational(1) - s);
    }
    return out;
}

BinomialRecurrence binomial_recurrence(const DifferenceEquation& eq) {
    if (!(eq.eta == QComplex(Rational(1))))
        raise(ErrorCode::kInvalidArgument, "sequence image requires unit step");

    const RationalPoly xpoly({Rational(0), Rational(1)});
    std::map<long, RationalPoly> total;
    for (unsigned k = 0; k < eq.coeffs.size(); ++k) {
        const RationalPoly& a = eq.coeffs[k];
        if (a.is_zero()) continue;
        std::map<long, RationalPoly> op;
        op[long(k)] = RationalPoly::constant(Rational(1));
        const long deg = a.degree();
        for (long p = 0; p <= deg; ++p) {
            const Rational c = a.coeff(size_t(p));
            if (c != 0)
                for (const auto& [t, P] : op) total[t] = total[t] + c * P;
            if (p < deg) {
                std::map<long, RationalPoly> next;
                for (const auto& [t, P] : op) {
                    next[t] = next[t] + xpoly * P;
                    next[t - 1] = next[t - 1] + xpoly * P.compose_shift_minus_one();
                }
                op = std::move(next);
            }
        }
    }

    BinomialRecurrence rec;
    for (auto& [t, P] : total)
        if (!P.is_zero()) rec.terms.emplace(t, std::move(P));
    if (rec.terms.empty())
        raise(ErrorCode::kValidationError, "equation maps to the zero operator");
    rec.t_min = rec.terms.begin()->first;
    rec.t_max = rec.terms.rbegin()->first;
    return rec;
}

namespace {

NewtonSolution forward_exact(const BinomialRecurrence& rec, unsigned terms, prec_t prec) {
    const long tmax = rec.t_max;
    if (tmax <= 0)
        raise(ErrorCode::kMinimalSolutionNotFound,
              "every entry is forced; only the zero sequence satisfies the recurrence");
    const RationalPoly& top = rec.terms.at(tmax);
    // rows whose leading coefficient vanishes leave their target entry free,
    // so the seed may sit above index t_max-1; the number of such rows is
    // bounded by the degree of the leading polynomial
    unsigned tries = std::min(terms, unsigned(tmax) + unsigned(std::max(0l, top.degree())) + 2);
    for (unsigned j0 = 0; j0 < tries; ++j0) {
        std::vector<Rational> bq(terms, Rational(0));
        bq[j0] = 1;
        bool ok = true;
        for (long M = 0; M + tmax < long(terms); ++M) {
            Rational pv = top.eval(Rational(M));
            Rational acc(0);
            for (const auto& [t, P] : rec.terms) {
                if (t == tmax) continue;
                long j = M + t;
                if (j < 0 || bq[size_t(j)] == 0) continue;
                acc += P.eval(Rational(M)) * bq[size_t(j)];
            }
            const long jt = M + tmax;
            if (pv == 0) {
                if (acc != 0) {
                    ok = false; // row is a constraint this seed violates
                    break;
                }
                continue; // target entry stays free (seeded or zero)
            }
            Rational v = -acc / pv;
            if (jt == long(j0)) {
                if (!(v == bq[size_t(jt)])) {
                    ok = false; // row contradicts the seed normalization
                    break;
                }
            } else {
                bq[size_t(jt)] = std::move(v);
            }
        }
        if (!ok) continue;
        NewtonSolution sol;
        sol.prec = prec;
        sol.first_free_index = j0;
        sol.subspace_dim = 0;
        sol.stability = 0.0;
        sol.b.reserve(terms);
        for (const Rational& q : bq) sol.b.push_back(to_real(q, prec));
        return sol;
    }
    raise(ErrorCode::kMinimalSolutionNotFound,
          "no consistent seed index for the ascending solve");
}

// One downward run: unit seed in the top block, every lower entry from its
// row. Entries below the first valid row keep vanishing factors, so those
// rows are skipped rather than pivoted.
std::vector<Real> backward_run(const BinomialRecurrence& rec, unsigned length,
                               unsigned seed_slot, prec_t W) {
    const long tmin = rec.t_min, tmax = rec.t_max;
    std::vector<Real> v(length, Real(W));
    v[length - 1 - seed_slot] = Real::of_long(1, W);
    const RationalPoly& piv = rec.terms.at(tmin);
    const long m_lo = std::max(0l, -tmin);
    for (long M = long(length) - 1 - tmax; M >= m_lo; --M) {
        Rational pq = piv.eval(Rational(M));
        if (pq == 0)
            raise(ErrorCode::kMinimalSolutionNotFound,
                  "downward pivot vanishes at row " + std::to_string(M));
        Real acc(W);
        for (const auto& [t, P] : rec.terms) {
            if (t == tmin) continue;
            const long j = M + t;
            if (j < 0 || j >= long(length) || v[size_t(j)].is_zero()) continue;
            Rational pv = P.eval(Rational(M));
            if (pv == 0) continue;
            acc = acc + to_real(pv, W) * v[size_t(j)];
        }
        v[size_t(M + tmin)] = -(acc / to_real(pq, W));
    }
    return v;
}

// First p indices whose run magnitudes stand clear of rounding noise; the
// representative is pinned there (1 at the first, 0 at the rest).
std::vector<unsigned> pick_condition_indices(const std::vector<std::vector<Real>>& runs,
                                             unsigned terms, unsigned p, prec_t W) {
    const unsigned half = terms / 2;
    Real g(W);
    std::vector<Real> colmax(half, Real(W));
    for (unsigned j = 0; j < half; ++j) {
        Real c(W);
        for (const auto& v : runs) c = max(c, abs(v[j]));
        colmax[j] = c;
        g = max(g, c);
    }
    if (g.is_zero())
        raise(ErrorCode::kMinimalSolutionNotFound, "seed runs vanish on the window");
    Real floor_v = mul_2si(g, -long(W) / 4);
    std::vector<unsigned> idx;
    for (unsigned j = 0; j < half && idx.size() < p; ++j)
        if (colmax[j] > floor_v) idx.push_back(j);
    if (idx.size() < p)
        raise(ErrorCode::kMinimalSolutionNotFound,
              "not enough well-conditioned indices to pin the representative");
    return idx;
}

// Combination of the runs with value 1 at idx[0] and 0 at the other pinned
// indices. Columns are normalized before elimination; the run entries span
// thousands of binary orders of magnitude.
std::vector<Real> combine_runs(const std::vector<std::vector<Real>>& runs,
                               const std::vector<unsigned>& idx, unsigned terms, prec_t W) {
    const unsigned p = unsigned(idx.size());
    std::vector<Real> scale(p, Real(W));
    for (unsigned s = 0; s < p; ++s) {
        for (unsigned i = 0; i < p; ++i) scale[s] = max(scale[s], abs(runs[s][idx[i]]));
        if (scale[s].is_zero())
            raise(ErrorCode::kMinimalSolutionNotFound, "degenerate seed run");
    }
    std::vector<std::vector<Real>> A(p, std::vector<Real>(p + 1, Real(W)));
    for (unsigned i = 0; i < p; ++i)
        for (unsigned s = 0; s < p; ++s) A[i][s] = runs[s][idx[i]] / scale[s];
    A[0][p] = Real::of_long(1, W);

    for (unsigned c = 0; c < p; ++c) {
        unsigned pr = c;
        for (unsigned r = c + 1; r < p; ++r)
            if (abs(A[r][c]) > abs(A[pr][c])) pr = r;
        if (abs(A[pr][c]).is_zero())
            raise(ErrorCode::kMinimalSolutionNotFound, "singular pinning system");
        std::swap(A[c], A[pr]);
        for (unsigned r = 0; r < p; ++r) {
            if (r == c || A[r][c].is_zero()) continue;
            Real f = A[r][c] / A[c][c];
            for (unsigned cc = c; cc <= p; ++cc) A[r][cc] = A[r][cc] - f * A[c][cc];
        }
    }

    std::vector<Real> alpha(p, Real(W));
    for (unsigned s = 0; s < p; ++s) alpha[s] = (A[s][p] / A[s][s]) / scale[s];
    std::vector<Real> u(terms, Real(W));
    for (unsigned j = 0; j < terms; ++j) {
        Real acc(W);
        for (unsigned s = 0; s < p; ++s) acc = acc + alpha[s] * runs[s][j];
        u[j] = acc;
    }
    return u;
}

// Worst relative disagreement on the lower half window. Entries buried 64
// bits or more under their local neighborhood are skipped: those slots are
// zeros of the whole minimal subspace and hold only seed contamination,
// which legitimately differs between the two margins.
double compare_representatives(const std::vector<Real>& u, const std::vector<Real>& w,
                               unsigned half, prec_t W) {
    double worst = 0.0;
    for (unsigned j = 0; j < half; ++j) {
        Real nb(W);
        for (long d = -2; d <= 2; ++d) {
            long jj = long(j) + d;
            if (jj < 0 || jj >= long(half)) continue;
            nb = max(nb, max(abs(u[size_t(jj)]), abs(w[size_t(jj)])));
        }
        Real m = max(abs(u[j]), abs(w[j]));
        if (m <= mul_2si(nb, -64)) continue;
        Real rel = abs(u[j] - w[j]) / m;
        worst = std::max(worst, rel.to_double());
    }
    return worst;
}

NewtonSolution backward_minimal(const BinomialRecurrence& rec, unsigned terms,
                                unsigned start_margin, prec_t prec) {
    const prec_t W = clamp_prec(prec + 96);
    const unsigned span = unsigned(rec.span());
    const unsigned margin = ((std::max(start_margin, 16u) + 3u) / 4u) * 4u;
    const unsigned len1 = terms + margin + span + 4;
    const unsigned len2 = terms + 2 * margin + span + 4;

    std::vector<std::vector<Real>> runs1, runs2;
    double best_stab = -1.0;
    for (unsigned p = 1; p < span; ++p) {
        while (runs1.size() < p) runs1.push_back(backward_run(rec, len1, unsigned(runs1.size()), W));
        while (runs2.size() < p) runs2.push_back(backward_run(rec, len2, unsigned(runs2.size()), W));
        std::vector<Real> u, w;
        unsigned j0 = 0;
        try {
            std::vector<unsigned> idx = pick_condition_indices(runs1, terms, p, W);
            j0 = idx[0];
            u = combine_runs(runs1, idx, terms, W);
            w = combine_runs(runs2, idx, terms, W);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::kMinimalSolutionNotFound) continue;
            throw;
        }
        double stab = compare_representatives(u, w, terms / 2, W);
        if (best_stab < 0.0 || stab < best_stab) best_stab = stab;
        if (stab <= 1e-20) {
            NewtonSolution sol;
            sol.prec = prec;
            sol.first_free_index = j0;
            sol.subspace_dim = p;
            sol.stability = stab;
            sol.b.reserve(terms);
            for (unsigned j = 0; j < terms; ++j) sol.b.push_back(w[j].round_to(prec));
            return sol;
        }
    }
    std::ostringstream msg;
    msg << "no seed-subspace dimension below the span is margin-stable";
    if (best_stab >= 0.0) msg << " (best disagreement " << best_stab << ")";
    raise(ErrorCode::kMinimalSolutionNotFound, msg.str());
}

} // namespace

NewtonSolution solve_minimal(const BinomialRecurrence& rec, unsigned terms,
                             unsigned start_margin, prec_t prec) {
    if (terms < 8) raise(ErrorCode::kInvalidArgument, "need at least 8 entries");
    if (rec.terms.empty()) raise(ErrorCode::kValidationError, "empty recurrence");
    if (rec.span() < 1)
        raise(ErrorCode::kValidationError,
              "recurrence couples a single entry; only the zero sequence satisfies it");
    if (rec.span() == 1) return forward_exact(rec, terms, prec);
    return backward_minimal(rec, terms, start_margin, prec);
}

Real solution_max_modulus(const std::vector<Real>& b, const Real& r, prec_t scan_prec) {
    if (b.empty()) raise(ErrorCode::kInvalidArgument, "empty coefficient window");
    if (r.sign() <= 0 || !r.is_finite())
        raise(ErrorCode::kInvalidArgument, "circle maximum needs r > 0");
    const prec_t w = clamp_prec(scan_prec);
    const double pi = 3.14159265358979323846;
    Real rw = r.round_to(w);
    Real half = Real::of_double(0.5, w);
    auto probe = [&](double th) -> Real {
        Complex uc = unit_circle(Real::of_double(th, w), w);
        Complex z(rw * uc.re + half, rw * uc.im);
        NewtonEval e = eval_newton_fixed(b, z, w);
        if (!e.converged)
            raise(ErrorCode::kNeedsMoreTerms,
                  "coefficient window too short for radius " + r.to_string(6));
        return e.value.abs();
    };

    double best_th = 0.0;
    Real best = probe(0.0);
    for (int j = 1; j <= 16; ++j) {
        double th = pi * double(j) / 16.0;
        Real v = probe(th);
        if (v > best) {
            best = v;
            best_th = th;
        }
    }
    double step = pi / 16.0;
    double a = std::max(0.0, best_th - step), bb = std::min(pi, best_th + step);
    const double gr = 0.6180339887498949;
    double c = bb - gr * (bb - a), d = a + gr * (bb - a);
    Real fc = probe(c), fd = probe(d);
    for (int it = 0; it < 60 && bb - a > 1e-5; ++it) {
        if (fc > fd) {
            bb = d;
            d = c;
            fd = fc;
            c = bb - gr * (bb - a);
            fc = probe(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (bb - a);
            fd = probe(d);
        }
    }
    return max(best, max(fc, fd));
}

GrowthFit growth_fit_solution(const std::vector<Real>& b, const std::vector<Real>& r_grid,
                              prec_t scan_prec) {
    std::vector<std::pair<Real, Real>> samples;
    samples.reserve(r_grid.size());
    for (const Real& r : r_grid)
        samples.push_back({r, log(solution_max_modulus(b, r, scan_prec))});
    return growth_fit_from_log_m(samples);
}

GrowthVerdict verify_predicted_growth(const DifferenceEquation& eq, unsigned terms,
                                      const std::vector<Real>& r_grid, prec_t prec) {
    GrowthVerdict out;
    out.polygon = newton_polygon(eq);
    BinomialRecurrence rec = binomial_recurrence(eq);
    out.recurrence_span = rec.span();
    if (out.polygon.predicted_orders.empty()) {
        out.status = "NO_PREDICTION";
        return out;
    }
    try {
        out.solution = solve_minimal(rec, terms, 32, prec);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::kMinimalSolutionNotFound) {
            out.status = "INCONCLUSIVE";
            return out;
        }
        throw;
    }
    out.fit = growth_fit_solution(out.solution.b, r_grid, 160);

    const unsigned n = eq.order();
    const prec_t wk = clamp_prec(prec + 16);
    const Real resid_gate = Real::of_double(1e-15, 64);
    bool resid_ok = true;
    for (long num : {21l, 41l, 71l, 101l, 201l}) {
        Rational zq(BigInt(num), BigInt(2));
        Real z = to_real(zq, prec);
        std::vector<Complex> fs;
        fs.reserve(n + 1);
        for (unsigned j = 0; j <= n; ++j)
            fs.push_back(eval_newton(out.solution.b, z + Real::of_long(long(j), prec), prec).value);

        Complex resid(wk);
        for (unsigned k = 0; k <= n; ++k) {
            if (eq.coeffs[k].is_zero()) continue;
            Complex dk(wk);
            for (unsigned j = 0; j <= k; ++j) {
                BigInt cb = binomial(k, j);
                if ((k - j) % 2 == 1) cb = -cb;
                dk = add_p(dk, to_real(cb, wk) * fs[j], wk);
            }
            resid = add_p(resid, to_real(eq.coeffs[k].eval(zq), wk) * dk, wk);
        }
        Real fabsv = fs[0].abs();
        if (fabsv.is_zero())
            raise(ErrorCode::kDataError, "solution vanishes at a residual spot argument");
        out.residuals.push_back({z, resid.abs() / fabsv});
        resid_ok = resid_ok && out.residuals.back().residual_over_f <= resid_gate;
    }

    bool chi_ok = false;
    for (const Rational& q : out.polygon.predicted_orders) {
        double chi = q.get_d();
        if (std::fabs(out.fit.chi_fit - chi) <= 0.03) {
            chi_ok = true;
            out.matched_order = chi;
            break;
        }
    }
    bool spread_ok = out.fit.per_decade_spread <= 0.05;
    out.pass = chi_ok && spread_ok && resid_ok;
    out.status = out.pass ? "PASS" : "FAIL";
    return out;
}

} // namespace deltawv
