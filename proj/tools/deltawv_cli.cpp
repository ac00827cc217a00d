// Copyright (c) 2026 The deltawv authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Every subcommand goes through the C API only; the
// report body is produced by the library and wrapped here with the resolved
// run configuration. Reports are written atomically (temp file + rename) and
// contain no timestamps; wall-clock metadata goes to a <out>.meta.json
// sidecar so identical runs stay byte-identical.
//
// Exit codes: 0 pass/complete, 1 a verification failed, 2 usage error,
// 3 numeric trouble (precision exhausted, no stable solution, ...).

#include "deltawv.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using OJson = nlohmann::ordered_json;

struct RunError {
    int exit_code;
    std::string message;
};

void need(dwv_status st) {
    if (st == DWV_OK) return;
    int code = 3;
    switch (st) {
        case DWV_ERR_INVALID_ARGUMENT:
        case DWV_ERR_UNKNOWN_NAME:
        case DWV_ERR_PARSE:
        case DWV_ERR_VALIDATION:
        case DWV_ERR_DATA:
        case DWV_ERR_IO:
            code = 2;
            break;
        default:
            code = 3;
            break;
    }
    throw RunError{code, dwv_last_error()};
}

struct Str {
    char* p = nullptr;
    ~Str() { dwv_string_free(p); }
    std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct Series {
    dwv_series* p = nullptr;
    ~Series() { dwv_series_free(p); }
};

struct Table {
    dwv_stirling* p = nullptr;
    ~Table() { dwv_stirling_free(p); }
};

struct Equation {
    dwv_equation* p = nullptr;
    ~Equation() { dwv_equation_free(p); }
};

struct Solution {
    dwv_solution* p = nullptr;
    ~Solution() { dwv_solution_free(p); }
};

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

uint64_t env_default_prec() {
    const char* env = std::getenv("DELTAWV_PREC");
    if (env == nullptr || *env == '\0') return 256;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return 256;
    return v;
}

std::pair<std::string, std::string> split_complex(const std::string& s) {
    size_t comma = s.find(',');
    if (comma == std::string::npos) return {s, "0"};
    return {s.substr(0, comma), s.substr(comma + 1)};
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw RunError{2, "cannot open " + tmp + " for writing"};
        f << content;
        f.flush();
        if (!f) throw RunError{2, "short write to " + tmp};
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw RunError{2, "cannot rename " + tmp + " to " + path};
}

int g_argc = 0;
char** g_argv = nullptr;

// Report to stdout or to --out; the sidecar carries the only timestamp.
void emit_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    write_atomic(out_path, text);
    std::time_t t = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    OJson meta;
    meta["written_at"] = stamp;
    OJson av = OJson::array();
    for (int i = 0; i < g_argc; ++i) av.push_back(g_argv[i]);
    meta["argv"] = std::move(av);
    write_atomic(out_path + ".meta.json", meta.dump(2) + "\n");
}

void emit_report(const std::string& command, OJson config, OJson report,
                 const std::string& out_path) {
    OJson doc;
    doc["command"] = command;
    doc["config"] = std::move(config);
    doc["report"] = std::move(report);
    emit_output(doc.dump(2) + "\n", out_path);
}

OJson parse_report(const Str& s) { return OJson::parse(s.str()); }

// Two columns, natural logs, one line per fitted row. Radii ascend, so the
// first column is strictly increasing.
void write_gnuplot(const OJson& report, const std::string& path) {
    std::string out;
    for (const auto& row : report.at("rows")) {
        if (!row.value("used_in_fit", false)) continue;
        double r = std::strtod(row.at("r").get<std::string>().c_str(), nullptr);
        double err = std::strtod(row.at("abs_err").get<std::string>().c_str(), nullptr);
        if (!(r > 0.0) || !(err > 0.0)) continue;
        out += shortest(std::log(r));
        out += ' ';
        out += shortest(std::log(err));
        out += '\n';
    }
    write_atomic(path, out);
}

int exit_for_decay(const OJson& report) {
    std::string status = report.value("status", "");
    if (status == "UNRELIABLE") return 3;
    return report.value("pass", false) ? 0 : 1;
}

// ---- subcommand bodies -------------------------------------------------

struct StirlingArgs {
    unsigned nmax = 8;
    std::string format = "json";
    std::string out;
};

int run_stirling(const StirlingArgs& a) {
    Table t;
    need(dwv_stirling_create(a.nmax, &t.p));
    if (a.format == "csv") {
        std::string csv;
        for (unsigned n = 0; n <= a.nmax; ++n) {
            for (unsigned m = 0; m <= n; ++m) {
                Str v;
                need(dwv_stirling_entry(t.p, n, m, &v.p));
                csv += std::to_string(n);
                csv += ',';
                csv += std::to_string(m);
                csv += ',';
                csv += v.str();
                csv += '\n';
            }
        }
        emit_output(csv, a.out);
        return 0;
    }
    OJson rows = OJson::array();
    for (unsigned n = 0; n <= a.nmax; ++n) {
        for (unsigned m = 0; m <= n; ++m) {
            Str v;
            need(dwv_stirling_entry(t.p, n, m, &v.p));
            rows.push_back(OJson{{"n", n}, {"m", m}, {"value", v.str()}});
        }
    }
    OJson config{{"nmax", a.nmax}, {"format", a.format}};
    emit_report("stirling", std::move(config), OJson{{"rows", std::move(rows)}}, a.out);
    return 0;
}

struct ExpandArgs {
    unsigned n = 1;
    unsigned N = 1;
    std::string eta = "1";
    uint64_t prec = 256;
    std::string out;
};

int run_expand(const ExpandArgs& a) {
    if (a.N < a.n) throw RunError{2, "--N must be at least --n"};
    Table t;
    need(dwv_stirling_create(a.N, &t.p));
    auto [ere, eim] = split_complex(a.eta);
    Str w;
    need(dwv_stirling_weights(t.p, a.n, a.N, ere.c_str(), eim.c_str(), a.prec, &w.p));
    OJson config{{"n", a.n}, {"N", a.N}, {"eta", a.eta}, {"prec", a.prec}};
    OJson report;
    report["weights"] = OJson::parse(w.str());
    emit_report("expand", std::move(config), std::move(report), a.out);
    return 0;
}

struct SeriesPick {
    std::string func = "bessel_i0_sqrt";
    std::string coeff_file;
};

void open_series(const SeriesPick& pick, Series& s) {
    if (!pick.coeff_file.empty())
        need(dwv_series_from_coefficient_file(pick.coeff_file.c_str(), &s.p));
    else
        need(dwv_series_builtin(pick.func.c_str(), &s.p));
}

OJson series_config(const SeriesPick& pick) {
    OJson c;
    if (!pick.coeff_file.empty())
        c["coeff_file"] = pick.coeff_file;
    else
        c["func"] = pick.func;
    return c;
}

struct VerifyExpansionArgs {
    SeriesPick pick;
    unsigned n = 1;
    unsigned N = 1;
    std::string eta = "1";
    double rmin = 1e2;
    double rmax = 1e6;
    unsigned points = 9;
    double eps = 0.05;
    uint64_t prec = 256;
    std::string out;
    std::string gnuplot;
    bool first_only = false;
};

int run_verify_expansion(const VerifyExpansionArgs& a) {
    Series s;
    open_series(a.pick, s);
    auto [ere, eim] = split_complex(a.eta);
    Str rep;
    if (a.first_only)
        need(dwv_verify_first_difference(s.p, a.N, ere.c_str(), eim.c_str(), a.rmin,
                                         a.rmax, a.points, a.eps, a.prec, &rep.p));
    else
        need(dwv_verify_expansion(s.p, a.n, a.N, ere.c_str(), eim.c_str(), a.rmin, a.rmax,
                                  a.points, a.eps, a.prec, &rep.p));
    OJson report = parse_report(rep);
    if (!a.gnuplot.empty()) write_gnuplot(report, a.gnuplot);
    OJson config = series_config(a.pick);
    if (!a.first_only) config["n"] = a.n;
    config["N"] = a.N;
    config["eta"] = a.eta;
    config["rmin"] = shortest(a.rmin);
    config["rmax"] = shortest(a.rmax);
    config["points"] = a.points;
    config["eps"] = shortest(a.eps);
    config["prec"] = a.prec;
    int rc = exit_for_decay(report);
    emit_report(a.first_only ? "verify-first" : "verify-expansion", std::move(config),
                std::move(report), a.out);
    return rc;
}

struct WVReportArgs {
    SeriesPick pick;
    double rmin = 1e2;
    double rmax = 1e6;
    unsigned points = 9;
    unsigned samples = 256;
    uint64_t prec = 256;
    std::string out;
};

int run_wv_report(const WVReportArgs& a) {
    Series s;
    open_series(a.pick, s);
    Str rep;
    need(dwv_wv_profile(s.p, a.rmin, a.rmax, a.points, a.samples, a.prec, &rep.p));
    OJson config = series_config(a.pick);
    config["rmin"] = shortest(a.rmin);
    config["rmax"] = shortest(a.rmax);
    config["points"] = a.points;
    config["samples"] = a.samples;
    config["prec"] = a.prec;
    emit_report("wv-report", std::move(config), parse_report(rep), a.out);
    return 0;
}

struct VerifyWVArgs {
    SeriesPick pick;
    unsigned k = 1;
    double eps = 0.05;
    double rmin = 1e2;
    double rmax = 1e6;
    unsigned points = 9;
    uint64_t prec = 256;
    bool pointwise = false;
    std::string out;
};

int run_verify_wv(const VerifyWVArgs& a) {
    Series s;
    open_series(a.pick, s);
    Str rep;
    if (a.pointwise)
        need(dwv_check_pointwise(s.p, a.k, a.eps, a.rmin, a.rmax, a.points, a.prec,
                                 &rep.p));
    else
        need(dwv_verify_wv_difference(s.p, a.k, a.rmin, a.rmax, a.points, a.eps, a.prec,
                                      &rep.p));
    OJson report = parse_report(rep);
    OJson config = series_config(a.pick);
    config["k"] = a.k;
    config["eps"] = shortest(a.eps);
    config["rmin"] = shortest(a.rmin);
    config["rmax"] = shortest(a.rmax);
    config["points"] = a.points;
    config["prec"] = a.prec;
    config["pointwise"] = a.pointwise;
    int rc = report.value("pass", false) ? 0 : 1;
    emit_report("verify-wv", std::move(config), std::move(report), a.out);
    return rc;
}

struct GammaArgs {
    std::vector<std::string> z;
    uint64_t prec = 256;
    std::string out;
};

int run_gamma(const GammaArgs& a) {
    std::vector<std::string> zs = a.z.empty() ? std::vector<std::string>{"2", "10", "50"} : a.z;
    std::vector<const char*> ptrs;
    ptrs.reserve(zs.size());
    for (const std::string& s : zs) ptrs.push_back(s.c_str());
    Str rep;
    need(dwv_gamma_counterexample(ptrs.data(), ptrs.size(), a.prec, &rep.p));
    OJson report = parse_report(rep);
    OJson zcfg = OJson::array();
    for (const std::string& s : zs) zcfg.push_back(s);
    OJson config{{"z", std::move(zcfg)}, {"prec", a.prec}};
    int rc = report.value("all_match", false) ? 0 : 1;
    emit_report("counterexample-gamma", std::move(config), std::move(report), a.out);
    return rc;
}

struct PolygonArgs {
    std::string eq_file;
    std::string out;
};

int run_polygon(const PolygonArgs& a) {
    Equation eq;
    need(dwv_equation_parse_file(a.eq_file.c_str(), &eq.p));
    Str poly;
    need(dwv_equation_polygon(eq.p, &poly.p));
    Str rec;
    need(dwv_equation_recurrence(eq.p, &rec.p));
    OJson report = parse_report(poly);
    report["recurrence"] = OJson::parse(rec.str());
    OJson config{{"eq", a.eq_file}};
    emit_report("polygon", std::move(config), std::move(report), a.out);
    return 0;
}

struct SolveArgs {
    std::string eq_file;
    unsigned terms = 600;
    unsigned margin = 0;
    double rmin = 1e3;
    double rmax = 1e7;
    unsigned points = 9;
    bool fit = false;
    uint64_t prec = 256;
    std::string out;
};

int run_solve(const SolveArgs& a) {
    Equation eq;
    need(dwv_equation_parse_file(a.eq_file.c_str(), &eq.p));
    OJson config{{"eq", a.eq_file}, {"terms", a.terms},   {"margin", a.margin},
                 {"rmin", shortest(a.rmin)}, {"rmax", shortest(a.rmax)},
                 {"points", a.points},       {"fit", a.fit},
                 {"prec", a.prec}};
    if (a.fit) {
        Str rep;
        need(dwv_verify_growth(eq.p, a.terms, a.rmin, a.rmax, a.points, a.prec, &rep.p));
        OJson report = parse_report(rep);
        std::string status = report.value("status", "");
        int rc = 0;
        if (status == "FAIL") rc = 1;
        if (status == "INCONCLUSIVE") rc = 3;
        emit_report("solve", std::move(config), std::move(report), a.out);
        return rc;
    }
    Solution sol;
    need(dwv_equation_solve(eq.p, a.terms, a.margin, a.prec, &sol.p));
    Str info;
    need(dwv_solution_info(sol.p, &info.p));
    emit_report("solve", std::move(config), parse_report(info), a.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    g_argc = argc;
    g_argv = argv;
    uint64_t prec_default = env_default_prec();

    CLI::App app{"deltawv: finite differences of entire functions, log-derivative "
                 "expansions, central-index growth, and difference-equation orders"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dwv_version()));

    int rc = 0;

    StirlingArgs st;
    auto* cst = app.add_subcommand("stirling", "Dump the set-partition count triangle");
    cst->add_option("--nmax", st.nmax, "Largest row")->capture_default_str();
    cst->add_option("--format", st.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cst->add_option("--out", st.out, "Output path (default stdout)");
    cst->callback([&] { rc = run_stirling(st); });

    ExpandArgs ex;
    ex.prec = prec_default;
    auto* cex = app.add_subcommand("expand", "Expansion weights for a difference quotient");
    cex->add_option("--n", ex.n, "Difference order")->capture_default_str();
    cex->add_option("--N", ex.N, "Truncation order")->capture_default_str();
    cex->add_option("--eta", ex.eta, "Step RE[,IM]")->capture_default_str();
    cex->add_option("--prec", ex.prec, "Working precision in bits")->capture_default_str();
    cex->add_option("--out", ex.out, "Output path (default stdout)");
    cex->callback([&] { rc = run_expand(ex); });

    VerifyExpansionArgs ve;
    ve.prec = prec_default;
    auto* cve = app.add_subcommand(
        "verify-expansion", "Truncation-error decay of the difference quotient expansion");
    cve->add_option("--func", ve.pick.func, "Series name")->capture_default_str();
    cve->add_option("--coeff-file", ve.pick.coeff_file, "Coefficient file instead of --func");
    cve->add_option("--n", ve.n, "Difference order")->capture_default_str();
    cve->add_option("--N", ve.N, "Truncation order")->capture_default_str();
    cve->add_option("--eta", ve.eta, "Step RE[,IM]")->capture_default_str();
    cve->add_option("--rmin", ve.rmin, "Smallest radius")->capture_default_str();
    cve->add_option("--rmax", ve.rmax, "Largest radius")->capture_default_str();
    cve->add_option("--points", ve.points, "Grid size")->capture_default_str();
    cve->add_option("--eps", ve.eps, "Slope tolerance")->capture_default_str();
    cve->add_option("--prec", ve.prec, "Working precision in bits")->capture_default_str();
    cve->add_option("--out", ve.out, "Output path (default stdout)");
    cve->add_option("--gnuplot", ve.gnuplot, "Write two-column log r, log err data");
    cve->callback([&] { rc = run_verify_expansion(ve); });

    VerifyExpansionArgs vf;
    vf.prec = prec_default;
    vf.first_only = true;
    auto* cvf = app.add_subcommand("verify-first",
                                   "First-difference specialization of verify-expansion");
    cvf->add_option("--func", vf.pick.func, "Series name")->capture_default_str();
    cvf->add_option("--coeff-file", vf.pick.coeff_file, "Coefficient file instead of --func");
    cvf->add_option("--N", vf.N, "Truncation order")->capture_default_str();
    cvf->add_option("--eta", vf.eta, "Step RE[,IM]")->capture_default_str();
    cvf->add_option("--rmin", vf.rmin, "Smallest radius")->capture_default_str();
    cvf->add_option("--rmax", vf.rmax, "Largest radius")->capture_default_str();
    cvf->add_option("--points", vf.points, "Grid size")->capture_default_str();
    cvf->add_option("--eps", vf.eps, "Slope tolerance")->capture_default_str();
    cvf->add_option("--prec", vf.prec, "Working precision in bits")->capture_default_str();
    cvf->add_option("--out", vf.out, "Output path (default stdout)");
    cvf->add_option("--gnuplot", vf.gnuplot, "Write two-column log r, log err data");
    cvf->callback([&] { rc = run_verify_expansion(vf); });

    WVReportArgs wr;
    wr.prec = prec_default;
    auto* cwr = app.add_subcommand("wv-report",
                                   "Maximal term, central index, and circle maximum profile");
    cwr->add_option("--func", wr.pick.func, "Series name")->capture_default_str();
    cwr->add_option("--coeff-file", wr.pick.coeff_file, "Coefficient file instead of --func");
    cwr->add_option("--rmin", wr.rmin, "Smallest radius")->capture_default_str();
    cwr->add_option("--rmax", wr.rmax, "Largest radius")->capture_default_str();
    cwr->add_option("--points", wr.points, "Grid size")->capture_default_str();
    cwr->add_option("--samples", wr.samples, "Circle samples for the modulus scan")
        ->capture_default_str();
    cwr->add_option("--prec", wr.prec, "Working precision in bits")->capture_default_str();
    cwr->add_option("--out", wr.out, "Output path (default stdout)");
    cwr->callback([&] { rc = run_wv_report(wr); });

    VerifyWVArgs vw;
    vw.prec = prec_default;
    auto* cvw = app.add_subcommand(
        "verify-wv", "Central-index prediction checks for the difference quotient");
    cvw->add_option("--func", vw.pick.func, "Series name")->capture_default_str();
    cvw->add_option("--coeff-file", vw.pick.coeff_file, "Coefficient file instead of --func");
    cvw->add_option("--k", vw.k, "Difference/derivative order")->capture_default_str();
    cvw->add_option("--eps", vw.eps, "Exponent slack")->capture_default_str();
    cvw->add_option("--rmin", vw.rmin, "Smallest radius")->capture_default_str();
    cvw->add_option("--rmax", vw.rmax, "Largest radius")->capture_default_str();
    cvw->add_option("--points", vw.points, "Grid size")->capture_default_str();
    cvw->add_option("--prec", vw.prec, "Working precision in bits")->capture_default_str();
    cvw->add_flag("--pointwise", vw.pointwise,
                  "Check log-derivative and shifted-ratio bands instead");
    cvw->add_option("--out", vw.out, "Output path (default stdout)");
    cvw->callback([&] { rc = run_verify_wv(vw); });

    GammaArgs ga;
    ga.prec = prec_default;
    auto* cga = app.add_subcommand(
        "counterexample-gamma",
        "Reciprocal-gamma first difference: exact identity, escaped prediction band");
    cga->add_option("--z", ga.z, "Sample points > 1 (repeatable)");
    cga->add_option("--prec", ga.prec, "Working precision in bits")->capture_default_str();
    cga->add_option("--out", ga.out, "Output path (default stdout)");
    cga->callback([&] { rc = run_gamma(ga); });

    PolygonArgs pg;
    auto* cpg = app.add_subcommand("polygon",
                                   "Degree diagram and predicted orders of an equation");
    cpg->add_option("--eq", pg.eq_file, "Equation JSON file")->required();
    cpg->add_option("--out", pg.out, "Output path (default stdout)");
    cpg->callback([&] { rc = run_polygon(pg); });

    SolveArgs so;
    so.prec = prec_default;
    auto* cso = app.add_subcommand("solve",
                                   "Minimal binomial-basis solution of an equation");
    cso->add_option("--eq", so.eq_file, "Equation JSON file")->required();
    cso->add_option("--terms", so.terms, "Coefficients to produce")->capture_default_str();
    cso->add_option("--margin", so.margin, "Downward-run margin (0 = auto)")
        ->capture_default_str();
    cso->add_option("--rmin", so.rmin, "Smallest fit radius")->capture_default_str();
    cso->add_option("--rmax", so.rmax, "Largest fit radius")->capture_default_str();
    cso->add_option("--points", so.points, "Fit grid size")->capture_default_str();
    cso->add_flag("--fit", so.fit, "Fit solution growth and check predicted orders");
    cso->add_option("--prec", so.prec, "Working precision in bits")->capture_default_str();
    cso->add_option("--out", so.out, "Output path (default stdout)");
    cso->callback([&] { rc = run_solve(so); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // help / version
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const RunError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    }
    return rc;
}
