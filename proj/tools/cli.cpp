// Command-line surface: reproducible experiments with CSV output.
// Exit codes: 0 success, 1 computation error, 2 validation error.

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shiftconv/circle.hpp"
#include "shiftconv/coeffs.hpp"
#include "shiftconv/expsums.hpp"
#include "shiftconv/shifted.hpp"
#include "shiftconv/special.hpp"
#include "shiftconv/voronoi.hpp"

using namespace shiftconv;

namespace {

struct Csv {
    std::ostringstream buf;

    void meta(const std::string& key, const std::string& val) {
        buf << "# " << key << "=" << val << "\n";
    }
    void line(const std::string& s) { buf << s << "\n"; }
    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) buf << ",";
            buf << c;
            first = false;
        }
        buf << "\n";
    }

    void emit(const std::string& out_path) const {
        if (out_path.empty()) {
            std::cout << buf.str();
            return;
        }
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << buf.str();
    }
};

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}
std::string fmt(i64 v) { return std::to_string(static_cast<long long>(v)); }
std::string fmt(int v) { return std::to_string(v); }

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty numeric list: " + s);
    return out;
}

std::vector<i64> parse_ints(const std::string& s) {
    std::vector<i64> out;
    for (double v : parse_doubles(s)) out.push_back(static_cast<i64>(v));
    return out;
}

struct Global {
    std::string out;
    int threads = 1;
    double tolerance = 0;  // 0: per-operation defaults
};

CoefficientTable load_or_native(const std::string& file, i64 n_max) {
    if (!file.empty()) return load_coefficients(file).table;
    return ramanujan_tau(n_max);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for shifted convolution sums of "
                 "theta series with Hecke eigenvalues"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Global g;
    app.add_option("--out", g.out, "write CSV to this path instead of stdout");
    app.add_option("--threads", g.threads, "worker threads for grid runs")
        ->check(CLI::Range(1, 256));
    app.add_option("--tolerance", g.tolerance,
                   "override the default relative quadrature tolerance");

    auto subcmd = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        // the shift parameter is spelled --h, so subcommands keep --help only
        s->set_help_flag("--help", "print this help and exit");
        return s;
    };

    // ---- rl ----
    auto* rl = subcmd("rl", "table of r_ell(n), lattice points on spheres");
    int rl_ell = 2;
    i64 rl_nmax = 100;
    rl->add_option("--ell", rl_ell, "number of squares")->required()->check(CLI::Range(1, 24));
    rl->add_option("--n-max", rl_nmax, "table length")->required();

    // ---- tau ----
    auto* tauc = subcmd("tau", "Ramanujan tau and normalized lambda table");
    i64 tau_nmax = 100;
    tauc->add_option("--n-max", tau_nmax)->required()->check(CLI::Range(1, 10000000));

    // ---- coeffs-check ----
    auto* cc = subcmd("coeffs-check",
                                  "Hecke-relation and Ramanujan-bound validation");
    std::string cc_file;
    i64 cc_nmax = 1000;
    cc->add_option("--file", cc_file, "coefficient file (native tau table if absent)");
    cc->add_option("--n-max", cc_nmax, "native table length");

    // ---- expsum ----
    auto* ex = subcmd("expsum", "complete exponential sums");
    std::string ex_kind;
    i64 ex_a = 1, ex_b = 0, ex_m = 1, ex_n = 1, ex_q = 1, ex_b1 = 0, ex_b2 = 0,
        ex_h = 1, ex_u = 0, ex_M = 0, ex_D = 1;
    int ex_ell = 2;
    ex->add_option("--kind", ex_kind, "gauss | kloosterman | salie | twisted | theta-char")
        ->required()
        ->check(CLI::IsMember({"gauss", "kloosterman", "salie", "twisted", "theta-char"}));
    ex->add_option("-q,--q", ex_q)->required();
    ex->add_option("-a,--a", ex_a);
    ex->add_option("-b,--b", ex_b);
    ex->add_option("-m,--m", ex_m);
    ex->add_option("-n,--n", ex_n);
    ex->add_option("--b1", ex_b1);
    ex->add_option("--b2", ex_b2);
    ex->add_option("--h", ex_h);
    ex->add_option("-u,--u", ex_u);
    ex->add_option("-M,--M", ex_M);
    ex->add_option("--ell", ex_ell);
    ex->add_option("-D,--D", ex_D);

    // ---- voronoi-check ----
    auto* vc = subcmd("voronoi-check", "two-sided Voronoi identity check");
    std::string vc_target = "r", vc_file;
    int vc_ell = 2;
    i64 vc_q = 1;
    double vc_X = 1000, vc_Delta = 16;
    vc->add_option("--target", vc_target)->check(CLI::IsMember({"r", "f"}));
    vc->add_option("--ell", vc_ell)->check(CLI::Range(2, 8));
    vc->add_option("--q", vc_q)->required();
    vc->add_option("--X", vc_X);
    vc->add_option("--Delta", vc_Delta);
    vc->add_option("--file", vc_file, "coefficient file for --target f");

    // ---- jutila-check ----
    auto* jc = subcmd("jutila-check", "L2 discrepancy of the flexible indicator");
    std::string jc_Q = "40,80,160,320,640";
    double jc_dpow = 1.0;
    i64 jc_D = 1, jc_h = 1;
    jc->add_option("--Q", jc_Q, "comma list of cutoffs");
    jc->add_option("--delta-power", jc_dpow, "delta = Q^{-p}, p in [1,2]")
        ->check(CLI::Range(1.0, 2.0));
    jc->add_option("--D", jc_D);
    jc->add_option("--h", jc_h);

    // ---- farey ----
    auto* fa = subcmd("farey", "mediant-bounded arcs of the Farey dissection");
    i64 fa_Q = 10;
    fa->add_option("--Q", fa_Q)->required()->check(CLI::Range(1, 100000));

    // ---- theta-arc ----
    auto* ta = subcmd("theta-arc", "major-arc approximation of the theta sum");
    double ta_X = 1e4;
    i64 ta_qmax = 50, ta_a = 0, ta_q = 0;
    double ta_beta = 0;
    ta->add_option("--X", ta_X);
    ta->add_option("--q-max", ta_qmax, "sweep all dissection arcs with q <= q-max");
    ta->add_option("--a", ta_a, "single-arc mode");
    ta->add_option("--q", ta_q, "single-arc mode");
    ta->add_option("--beta", ta_beta, "single-arc mode");

    // ---- shifted-sum ----
    auto* sh = subcmd("shifted-sum", "direct and smoothed shifted convolution sum");
    int sh_ell = 2;
    i64 sh_h = 1;
    double sh_X = 1000, sh_Delta = 16;
    std::string sh_file;
    sh->add_option("--ell", sh_ell)->check(CLI::Range(1, 12));
    sh->add_option("--h", sh_h)->check(CLI::Range(i64{0}, i64{1} << 40));
    sh->add_option("--X", sh_X);
    sh->add_option("--Delta", sh_Delta);
    sh->add_option("--file", sh_file);

    // ---- circle-recon ----
    auto* cr = subcmd("circle-recon",
                                  "Farey-dissection reconstruction of the smoothed sum");
    i64 cr_h = 1;
    double cr_X = 100, cr_Delta = 8;
    std::string cr_file;
    cr->add_option("--h", cr_h)->required();
    cr->add_option("--X", cr_X)->required();
    cr->add_option("--Delta", cr_Delta);
    cr->add_option("--file", cr_file);

    // ---- exponent-fit ----
    auto* ef = subcmd("exponent-fit", "growth exponent of S_h(X) on a grid");
    int ef_ell = 2;
    std::string ef_h = "1", ef_X = "1e3,3e3,1e4,3e4,1e5";
    double ef_Delta = 16;
    std::string ef_file;
    ef->add_option("--ell", ef_ell)->check(CLI::Range(1, 12));
    ef->add_option("--h", ef_h, "comma list of shifts");
    ef->add_option("--X", ef_X, "comma list of scales (scientific notation ok)");
    ef->add_option("--Delta", ef_Delta);
    ef->add_option("--file", ef_file);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Csv csv;
    try {
        if (*rl) {
            auto t = repr_count(rl_ell, rl_nmax);
            csv.meta("cmd", "rl ell=" + fmt(rl_ell) + " n_max=" + fmt(rl_nmax));
            csv.line("n,r_ell");
            for (i64 n = 0; n <= rl_nmax; ++n) csv.row({fmt(n), fmt(t[n])});
        } else if (*tauc) {
            auto raw = ramanujan_tau_raw(tau_nmax);
            csv.meta("cmd", "tau n_max=" + fmt(tau_nmax));
            csv.line("n,tau,lambda");
            for (i64 n = 1; n <= tau_nmax; ++n) {
                double lam = static_cast<double>(raw[static_cast<std::size_t>(n)]) /
                             std::pow(static_cast<double>(n), 5.5);
                csv.row({fmt(n), to_string_i128(raw[static_cast<std::size_t>(n)]), fmt(lam)});
            }
        } else if (*cc) {
            LoadedTable lt;
            if (!cc_file.empty()) {
                lt = load_coefficients(cc_file);
            } else {
                lt.table = ramanujan_tau(cc_nmax);
                lt.report.hecke = check_hecke_relations(lt.table).hecke;
                auto d = divisor_count_table(lt.table.n_max());
                for (i64 n = 1; n <= lt.table.n_max(); ++n)
                    if (std::abs(lt.table(n)) >
                        static_cast<double>(d[static_cast<std::size_t>(n)]) *
                                std::pow(static_cast<double>(n), lt.table.spec.theta) + 1e-9)
                        lt.report.bound_violations.push_back(n);
            }
            csv.meta("cmd", "coeffs-check file=" + (cc_file.empty() ? "<native>" : cc_file) +
                                " n_max=" + fmt(lt.table.n_max()));
            csv.meta("hecke_violations", fmt(static_cast<i64>(lt.report.hecke.size())));
            csv.meta("bound_violations", fmt(static_cast<i64>(lt.report.bound_violations.size())));
            csv.line("type,m,n,expected,got");
            for (const auto& v : lt.report.hecke)
                csv.row({"hecke", fmt(v.m), fmt(v.n), fmt(v.expected), fmt(v.got)});
            for (i64 n : lt.report.bound_violations)
                csv.row({"bound", fmt(i64{0}), fmt(n), "", ""});
            if (lt.report.ok()) csv.row({"ok", "0", "0", "", ""});
        } else if (*ex) {
            csv.meta("cmd", "expsum kind=" + ex_kind + " q=" + fmt(ex_q));
            csv.line("kind,q,value_re,value_im,abs,bound");
            cplx v;
            double bound = std::numeric_limits<double>::infinity();
            if (ex_kind == "gauss") v = gauss_sum(ex_a, ex_b, ex_q);
            else if (ex_kind == "kloosterman") {
                auto s = kloosterman(ex_m, ex_n, ex_q);
                v = s.value;
                bound = s.bound;
            } else if (ex_kind == "salie") {
                auto s = salie(ex_m, ex_n, ex_q);
                v = s.value;
                bound = s.bound;
            } else if (ex_kind == "twisted") {
                v = twisted_sum_C(ex_b1, ex_b2, ex_h, ex_u, ex_q);
            } else {
                auto s = theta_char_sum_direct(ex_h, ex_M, ex_q, ex_ell, ex_D);
                v = s.total;
            }
            csv.row({ex_kind, fmt(ex_q), fmt(v.real()), fmt(v.imag()),
                     fmt(std::abs(v)), fmt(bound)});
        } else if (*vc) {
            VoronoiOptions opts;
            if (g.tolerance > 0) opts.stop_rel = g.tolerance;
            std::vector<VoronoiResult> res;
            // dual sums need tables past the transform decay point, which
            // sits near (75 Delta qq)^2 / X dual terms
            double zstar = 150.0 * vc_Delta * static_cast<double>(vc_q);
            i64 need = static_cast<i64>(std::min(1.2e6, zstar * zstar / vc_X * 2 + vc_X + 1000));
            if (vc_target == "r") {
                auto r = repr_count(vc_ell, need);
                auto w = make_window(WindowKind::ThetaBump, vc_X, vc_Delta);
                res = verify_voronoi_r_all(r, vc_q, w, opts);
            } else {
                auto t = load_or_native(vc_file, need);
                auto w = make_window(WindowKind::ThetaBump, vc_X, vc_Delta);
                res = verify_voronoi_f_all(t, vc_q, w, opts);
            }
            csv.meta("cmd", "voronoi-check target=" + vc_target + " ell=" + fmt(vc_ell) +
                                " q=" + fmt(vc_q) + " X=" + fmt(vc_X) +
                                " Delta=" + fmt(vc_Delta));
            csv.line("a,q,lhs_re,lhs_im,rhs_re,rhs_im,relerr,dual_terms");
            for (const auto& v : res)
                csv.row({fmt(v.a), fmt(v.q), fmt(v.lhs.real()), fmt(v.lhs.imag()),
                         fmt(v.rhs.real()), fmt(v.rhs.imag()), fmt(v.relerr),
                         fmt(v.dual_terms)});
        } else if (*jc) {
            csv.meta("cmd", "jutila-check Q=" + jc_Q + " delta_power=" + fmt(jc_dpow) +
                                " D=" + fmt(jc_D) + " h=" + fmt(jc_h));
            csv.line("Q,delta,L,l2_error,fitted_constant");
            for (double Q : parse_doubles(jc_Q)) {
                auto s = build_moduli_set(jc_D, Q, jc_h);
                double delta = std::pow(Q, -jc_dpow);
                double err = jutila_l2_error(s, delta);
                double fitted = err * delta * static_cast<double>(s.L) * s.L / (Q * Q);
                csv.row({fmt(Q), fmt(delta), fmt(s.L), fmt(err), fmt(fitted)});
            }
        } else if (*fa) {
            auto arcs = farey_dissect(fa_Q);
            csv.meta("cmd", "farey Q=" + fmt(fa_Q));
            csv.line("a,q,left_num,left_den,right_num,right_den");
            for (const auto& arc : arcs)
                csv.row({fmt(arc.a), fmt(arc.q), fmt(arc.left.num), fmt(arc.left.den),
                         fmt(arc.right.num), fmt(arc.right.den)});
        } else if (*ta) {
            csv.meta("cmd", "theta-arc X=" + fmt(ta_X) +
                                (ta_q > 0 ? " a=" + fmt(ta_a) + " q=" + fmt(ta_q) +
                                                " beta=" + fmt(ta_beta)
                                          : " q_max=" + fmt(ta_qmax)));
            csv.line("a,q,beta,approx_re,approx_im,actual_re,actual_im,residual,residual_cap");
            auto emit_arc = [&](i64 a, i64 q, double beta) {
                auto r = theta_major_arc(a, q, beta, ta_X);
                double cap = 10.0 * std::sqrt(static_cast<double>(q)) * std::log(q + 2.0);
                csv.row({fmt(a), fmt(q), fmt(beta), fmt(r.approx.real()),
                         fmt(r.approx.imag()), fmt(r.actual.real()),
                         fmt(r.actual.imag()), fmt(r.residual), fmt(cap)});
            };
            if (ta_q > 0) {
                emit_arc(ta_a, ta_q, ta_beta);
            } else {
                i64 Q = static_cast<i64>(std::floor(5.0 * std::sqrt(ta_X)));
                std::vector<FareyArc> picked;
                for (const auto& arc : farey_dissect(Q))
                    if (arc.q <= ta_qmax) picked.push_back(arc);
                // arcs are independent; results land in slots, emitted in order
                std::vector<std::array<ThetaArcResult, 3>> res(picked.size());
                parallel_for(picked.size(), g.threads, [&](std::size_t i) {
                    const auto& arc = picked[i];
                    double lo = static_cast<double>(arc.left.num) / arc.left.den;
                    double hi = static_cast<double>(arc.right.num) / arc.right.den;
                    res[i] = {theta_major_arc(arc.a, arc.q, lo, ta_X),
                              theta_major_arc(arc.a, arc.q, 0.5 * (lo + hi), ta_X),
                              theta_major_arc(arc.a, arc.q, hi, ta_X)};
                });
                for (std::size_t i = 0; i < picked.size(); ++i) {
                    const auto& arc = picked[i];
                    double lo = static_cast<double>(arc.left.num) / arc.left.den;
                    double hi = static_cast<double>(arc.right.num) / arc.right.den;
                    double cap = 10.0 * std::sqrt(static_cast<double>(arc.q)) *
                                 std::log(arc.q + 2.0);
                    double betas[3] = {lo, 0.5 * (lo + hi), hi};
                    for (int k = 0; k < 3; ++k)
                        csv.row({fmt(arc.a), fmt(arc.q), fmt(betas[k]),
                                 fmt(res[i][k].approx.real()), fmt(res[i][k].approx.imag()),
                                 fmt(res[i][k].actual.real()), fmt(res[i][k].actual.imag()),
                                 fmt(res[i][k].residual), fmt(cap)});
                }
            }
        } else if (*sh) {
            auto r = repr_count(sh_ell, static_cast<i64>(sh_X));
            auto t = load_or_native(sh_file, static_cast<i64>(sh_X) + sh_h);
            double direct = shifted_sum_direct(r, t, sh_h, sh_X);
            auto sm = shifted_sum_smoothed(r, t, sh_h, sh_X, sh_Delta);
            csv.meta("cmd", "shifted-sum ell=" + fmt(sh_ell) + " h=" + fmt(sh_h) +
                                " X=" + fmt(sh_X) + " Delta=" + fmt(sh_Delta));
            csv.meta("gap_bound", fmt(sm.gap_bound));
            csv.line("ell,h,X,Delta,S_direct,S_smoothed,gap,fitted_slope,theorem_exponent");
            csv.row({fmt(sh_ell), fmt(sh_h), fmt(sh_X), fmt(sh_Delta), fmt(direct),
                     fmt(sm.value), fmt(sm.gap), "",
                     fmt(theorem1_exponent(sh_ell, t.spec.theta))});
        } else if (*cr) {
            auto t = load_or_native(cr_file, static_cast<i64>(cr_X) + cr_h);
            double tol = g.tolerance > 0 ? g.tolerance : 1e-6;
            auto rec = circle_reconstruction(t, cr_h, cr_X, cr_Delta, tol);
            csv.meta("cmd", "circle-recon h=" + fmt(cr_h) + " X=" + fmt(cr_X) +
                                " Delta=" + fmt(cr_Delta));
            csv.line("h,X,Delta,direct,reconstructed,relerr,arcs,arcs_failed");
            csv.row({fmt(cr_h), fmt(cr_X), fmt(cr_Delta), fmt(rec.direct),
                     fmt(rec.reconstructed), fmt(rec.relerr), fmt(rec.arcs),
                     fmt(static_cast<i64>(rec.arcs_failed))});
        } else if (*ef) {
            auto Xs = parse_doubles(ef_X);
            auto hs = parse_ints(ef_h);
            i64 hmax = 0;
            for (i64 h : hs) hmax = std::max(hmax, h);
            i64 nmax = static_cast<i64>(Xs.back());
            auto r = repr_count(ef_ell, nmax);
            auto t = load_or_native(ef_file, nmax + hmax);
            auto fits = exponent_fit(r, t, Xs, hs);
            csv.meta("cmd", "exponent-fit ell=" + fmt(ef_ell) + " h=" + ef_h +
                                " X=" + ef_X + " Delta=" + fmt(ef_Delta));
            csv.line("ell,h,X,Delta,S_direct,S_smoothed,gap,fitted_slope,theorem_exponent");
            for (const auto& f : fits) {
                for (double X : f.X_values) {
                    double direct = shifted_sum_direct(r, t, f.h, X);
                    auto sm = shifted_sum_smoothed(r, t, f.h, X, ef_Delta);
                    csv.row({fmt(ef_ell), fmt(f.h), fmt(X), fmt(ef_Delta), fmt(direct),
                             fmt(sm.value), fmt(sm.gap), fmt(f.slope),
                             fmt(f.theorem_exponent)});
                }
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cout << "error,validation," << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << "error,computation," << e.what() << "\n";
        return 1;
    }
    try {
        csv.emit(g.out);
    } catch (const std::exception& e) {
        std::cerr << "error,io," << e.what() << "\n";
        return 1;
    }
    return 0;
}
