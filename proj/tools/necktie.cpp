// necktie: command-line front end for evaluation, classification,
// verification suites and Monte Carlo checks. Output is CSV (or a bare
// value) on stdout or --out.
//
// Exit codes: 0 success, 1 a check out of tolerance (or a computation that
// did not converge), 2 usage error or invalid parameters.

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "necktie/bernstein.hpp"
#include "necktie/error.hpp"
#include "necktie/mlcore.hpp"
#include "necktie/montecarlo.hpp"
#include "necktie/suites.hpp"
#include "necktie/verify.hpp"

namespace {

using namespace necktie;
using suites::format_number;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// lo:hi:count[:log], all points strictly positive, count <= 1e6.
verify::Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3 && !(parts.size() == 4 && (parts[3] == "log" || parts[3] == "lin"))) {
        throw UsageError("grid must be lo:hi:count or lo:hi:count:log");
    }
    double lo, hi;
    long count;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw UsageError("");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw UsageError("");
        count = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw UsageError("");
    } catch (const std::exception&) {
        throw UsageError("grid: cannot parse '" + text + "'");
    }
    if (!(lo > 0.0) || !std::isfinite(hi) || count < 1 || count > 1000000 || (count > 1 && !(hi > lo)) ||
        (count == 1 && hi != lo)) {
        throw UsageError("grid: need 0 < lo < hi and 1 <= count <= 1e6 (count 1 needs lo == hi)");
    }
    if (count == 1) return verify::Grid{{lo}};
    const bool log = parts.size() == 4 && parts[3] == "log";
    const int n = static_cast<int>(count);
    return log ? verify::Grid::logspace(lo, hi, n) : verify::Grid::linspace(lo, hi, n);
}

rng::Seed seed_from_env() {
    rng::Seed seed;
    if (const char* env = std::getenv("NECKTIE_SEED")) {
        const std::string s(env);
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
            throw UsageError("NECKTIE_SEED must be a decimal 64-bit integer");
        }
        seed.value = v;
    }
    return seed;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw UsageError("cannot open --out " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

const char* status(bool pass) { return pass ? "PASS" : "FAIL"; }

double eval_one(const std::string& what, ml::AlphaBeta ab, double x) {
    if (what == "E") return ml::ml(ab, x);
    if (what == "F") return ml::big_f(ab, x);
    if (what == "LbF") return ml::lb_big_f(ab, x);
    if (what == "D") return ml::d_func(ab, x);
    if (what == "Dbar") return ml::dbar_func(ab, x);
    if (what == "Dtilde") return ml::tilde_d(ab.alpha, x);
    for (auto w : {ml::ThmB::FMinusTerm, ml::ThmB::TermMinusF, ml::ThmB::LbFMinusTerm, ml::ThmB::TermMinusLbF}) {
        if (what == ml::to_string(w)) return ml::thmb_diff(ab, x, w);
    }
    throw UsageError("unknown --what " + what);
}

bernstein::DensitySpec density_by_name(const std::string& kind, const std::vector<double>& p) {
    using S = bernstein::DensitySpec;
    const auto need = [&](std::size_t n) {
        if (p.size() != n) throw UsageError(kind + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (kind == "FAlpha") return need(1), S::f_alpha(p[0]);
    if (kind == "FHat") return need(1), S::f_hat(p[0]);
    if (kind == "ExaDensity") return need(1), S::exa(p[0]);
    if (kind == "TAlpha") return need(1), S::t_alpha(p[0]);
    if (kind == "EaxxDensity") return need(1), S::eaxx(p[0]);
    if (kind == "UPowDensity") return need(1), S::upow(p[0]);
    if (kind == "UPowSizeBias") return need(1), S::upow_size_bias(p[0]);
    if (kind == "TildeFAlpha") return need(1), S::tilde_f_alpha(p[0]);
    if (kind == "HAlphaBeta") return need(2), S::h_alpha_beta(p[0], p[1]);
    if (kind == "HankelBracket") return need(2), S::hankel_bracket(p[0], p[1]);
    if (kind == "GAlpha") return need(1), S::g_alpha(p[0]);
    if (kind == "TildeGAlpha") return need(1), S::tilde_g_alpha(p[0]);
    if (kind == "Remark2Line1") return need(0), S::remark2_line1();
    if (kind == "Remark2Line3") return need(0), S::remark2_line3();
    if (kind == "BetaKernel") return need(2), S::beta_kernel(p[0], p[1]);
    if (kind == "GammaKernel") return need(1), S::gamma_kernel(p[0]);
    if (kind == "StableDensity") return need(1), S::stable(p[0]);
    if (kind == "Bernstein") return need(2), bernstein::compose_bernstein({p[0], p[1]});
    throw UsageError("unknown --kind " + kind);
}

std::function<double(double)> cm_function(const std::string& fn, double a, double b) {
    if (fn == "d") return [=](double x) { return ml::d_func({a, b}, x); };
    if (fn == "dbar") return [=](double x) { return ml::dbar_func({a, b}, x); };
    if (fn == "rescaled") return [=](double x) { return ml::d_func({a, b}, std::pow(x, 1.0 / a)); };
    if (fn == "prop1") {
        return [=](double x) { return ml::thmb_diff({a, 1.0}, std::pow(x, 1.0 / a), ml::ThmB::TermMinusF); };
    }
    for (auto w : {ml::ThmB::FMinusTerm, ml::ThmB::TermMinusF, ml::ThmB::LbFMinusTerm, ml::ThmB::TermMinusLbF}) {
        if (fn == ml::to_string(w)) return [=](double x) { return ml::thmb_diff({a, b}, x, w); };
    }
    throw UsageError("unknown --fn " + fn);
}

std::string witness_fields(const std::optional<verify::SignWitness>& w) {
    if (!w) return ",,";
    return format_number(w->x) + ',' + format_number(w->value) + ',' + verify::to_string(w->source);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mittag-Leffler differences: evaluation, classification and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--seed", seed_flag, "64-bit seed (default NECKTIE_SEED or 0xC0FFEE)");

    // eval
    auto* eval = app.add_subcommand("eval", "pointwise values; one value, or CSV x,value with --grid");
    double e_alpha = 0, e_beta = 1, e_x = 0;
    std::string e_what, e_grid;
    eval->add_option("--alpha", e_alpha, "alpha")->required();
    eval->add_option("--beta", e_beta, "beta")->capture_default_str();
    eval->add_option("--what", e_what, "E, F, LbF, D, Dbar, Dtilde, F-term, term-F, LbF-term, term-LbF")
        ->required();
    auto* x_opt = eval->add_option("--x", e_x, "argument");
    auto* g_opt = eval->add_option("--grid", e_grid, "lo:hi:count[:log]");
    x_opt->excludes(g_opt);

    // classify
    auto* classify = app.add_subcommand("classify", "necktie verdict: D_CM, Dbar_CM, ZeroFunction, Neither, ...");
    double c_alpha = 0, c_beta = 0;
    bool c_boundary = false;
    classify->add_option("--alpha", c_alpha)->required();
    classify->add_option("--beta", c_beta)->required();
    classify->add_flag("--boundary", c_boundary, "append ,boundary when on a closed region edge");

    // scan
    auto* scan = app.add_subcommand(
        "scan",
        "classifier against numeric signs on a grid; CSV alpha,beta,verdict,boundary,min_d,max_d,"
        "d_witness_x,d_witness_value,d_witness_source,dbar_witness_x,dbar_witness_value,"
        "dbar_witness_source,status");
    int s_count = 40;
    double s_step = 0.05;
    unsigned s_threads = 0;
    scan->add_option("--count", s_count, "cells per axis")->capture_default_str()->check(CLI::Range(1, 400));
    scan->add_option("--step", s_step, "grid step")->capture_default_str()->check(CLI::PositiveNumber);
    scan->add_option("--threads", s_threads, "workers, 0 for all cores")->capture_default_str();

    // verify
    auto* ver = app.add_subcommand("verify", "numeric checks; CSV with a status column");
    ver->require_subcommand(1);

    auto* v_id = ver->add_subcommand("identity", "closed identity; CSV check,param,max_error,worst_x,tolerance,status");
    std::string vi_name, vi_grid = "0.1:5:50";
    double vi_param = 1.0, vi_tol = 1e-10;
    v_id->add_option("--name", vi_name, "D1beta, ThmB_alpha1, Dhalf, Dbar21, Dbar41, Ehalf, E1beta_inc")
        ->required();
    v_id->add_option("--param", vi_param, "beta where the identity takes one")->capture_default_str();
    v_id->add_option("--grid", vi_grid)->capture_default_str();
    v_id->add_option("--tol", vi_tol)->capture_default_str();

    auto* v_rep = ver->add_subcommand(
        "representation", "series against Laplace transform; CSV check,alpha,beta,max_error,worst_x,tolerance,status");
    std::string vr_name, vr_grid = "0.1:5:20";
    double vr_alpha = 0, vr_beta = 1, vr_tol = 1e-6;
    v_rep->add_option("--name", vr_name, "b1, b2, Exa, FHat, Eaxx, UPow, SizeBias, ThmB_F, ThmB_LbF, Bernstein, "
                                         "Bracket, Remark2Line1, Remark2Line3")
        ->required();
    v_rep->add_option("--alpha", vr_alpha)->required();
    v_rep->add_option("--beta", vr_beta)->capture_default_str();
    v_rep->add_option("--grid", vr_grid)->capture_default_str();
    v_rep->add_option("--tol", vr_tol)->capture_default_str();

    auto* v_mel = ver->add_subcommand("mellin", "closed Mellin form against quadrature; CSV alpha,s,closed,quadrature,"
                                                "rel_error,tolerance,status");
    double vm_alpha = 0, vm_tol = 1e-7;
    std::vector<double> vm_s;
    bool vm_tilde = false;
    v_mel->add_option("--alpha", vm_alpha)->required();
    v_mel->add_option("--s", vm_s, "exponents (default 5 interior strip points)")->delimiter(',');
    v_mel->add_flag("--tilde", vm_tilde, "Chebyshev-corrected density, alpha < 1/2");
    v_mel->add_option("--tol", vm_tol)->capture_default_str();

    auto* v_lap = ver->add_subcommand("laplace", "closed Laplace transform against numeric integration; CSV which,"
                                                 "alpha,s,numeric,closed,rel_error,tolerance,status");
    std::string vl_which = "D_a1";
    double vl_alpha = 0, vl_xmax = 40, vl_tol = 1e-6;
    std::vector<double> vl_s{0.5, 1, 2, 4};
    v_lap->add_option("--which", vl_which, "D_a1 or thmB_a")->capture_default_str();
    v_lap->add_option("--alpha", vl_alpha)->required();
    v_lap->add_option("--s", vl_s)->delimiter(',')->capture_default_str();
    v_lap->add_option("--x-max", vl_xmax, "upper end of the numeric integral")->capture_default_str();
    v_lap->add_option("--tol", vl_tol)->capture_default_str();

    auto* v_cm = ver->add_subcommand("cm", "alternating-difference check; CSV fn,alpha,beta,order,passed,witness_x,"
                                           "witness_order,violation,status");
    std::string vc_fn, vc_grid = "0.2:4:12";
    double vc_alpha = 0, vc_beta = 1;
    int vc_order = 8;
    bool vc_expect_fail = false;
    v_cm->add_option("--fn", vc_fn, "d, dbar, F-term, term-F, LbF-term, term-LbF, rescaled, prop1")->required();
    v_cm->add_option("--alpha", vc_alpha)->required();
    v_cm->add_option("--beta", vc_beta)->capture_default_str();
    v_cm->add_option("--order", vc_order)->capture_default_str()->check(CLI::Range(0, 10));
    v_cm->add_option("--grid", vc_grid)->capture_default_str();
    v_cm->add_flag("--expect-fail", vc_expect_fail, "PASS iff the check finds a witness");

    auto* v_all = ver->add_subcommand("all", "every suite; CSV suite,check,params,x,value,reference,error,tolerance,"
                                             "status (rows named *_control pass when error exceeds tolerance)");
    std::size_t va_n = 1000000;
    unsigned va_threads = 0;
    v_all->add_option("--mc-n", va_n, "Monte Carlo sample size")->capture_default_str()->check(CLI::Range(2, 100000000));
    v_all->add_option("--threads", va_threads, "scan workers, 0 for all cores")->capture_default_str();

    // mc
    auto* mcc = app.add_subcommand("mc", "Monte Carlo identity; CSV name,lambda,lhs,rhs,std_error,sigmas,status");
    std::string m_name;
    mc::McParams m_prm;
    std::size_t m_n = 1000000;
    std::vector<double> m_lambdas{0.5, 1, 2};
    mcc->add_option("--name", m_name, "StableLT, MLLT, ML2LT, Pollard, SizeBias, MABFactor, Sabb, Exx, Eaxx, "
                                      "Prop1, XMean, Factor_daa")
        ->required();
    mcc->add_option("--alpha", m_prm.alpha)->required();
    mcc->add_option("--beta", m_prm.beta, "Sabb only")->capture_default_str();
    mcc->add_option("--n", m_n)->capture_default_str()->check(CLI::Range(2, 100000000));
    mcc->add_option("--lambdas", m_lambdas)->delimiter(',')->capture_default_str();
    mcc->add_option("--shift", m_prm.sampler_shift, "perturb the sampler alpha")->capture_default_str();
    mcc->add_option("--band", m_prm.sigma_band, "acceptance band in standard errors")->capture_default_str();
    mcc->add_option("--rel-floor", m_prm.rel_floor, "band floor relative to |rhs|")->capture_default_str();

    // densities
    auto* dens = app.add_subcommand("densities", "tabulate a density; CSV t,value");
    std::string d_kind, d_grid = "0.1:10:100:log";
    std::vector<double> d_params;
    dens->add_option("--kind", d_kind, "FAlpha, FHat, ExaDensity, TAlpha, EaxxDensity, UPowDensity, UPowSizeBias, "
                                       "TildeFAlpha, HAlphaBeta, HankelBracket, GAlpha, TildeGAlpha, Remark2Line1, "
                                       "Remark2Line3, BetaKernel, GammaKernel, StableDensity, Bernstein (alpha,beta)")
        ->required();
    dens->add_option("--params", d_params, "comma-separated parameters")->delimiter(',');
    dens->add_option("--grid", d_grid)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "usage: necktie [--out FILE] [--seed N] {eval|classify|scan|verify|mc|densities} ...\n";
        return 2;
    }

    try {
        rng::Seed seed = seed_from_env();
        if (seed_flag) seed.value = *seed_flag;
        Output out(out_path);
        auto& os = out.os();
        bool ok = true;

        if (*eval) {
            const ml::AlphaBeta ab{e_alpha, e_beta};
            if (e_grid.empty()) {
                if (x_opt->count() == 0) throw UsageError("eval needs --x or --grid");
                os << format_number(eval_one(e_what, ab, e_x)) << '\n';
            } else {
                os << "x,value\n";
                for (double x : parse_grid(e_grid).points) {
                    os << format_number(x) << ',' << format_number(eval_one(e_what, ab, x)) << '\n';
                }
            }
        } else if (*classify) {
            const auto v = verify::classify({c_alpha, c_beta});
            os << verify::to_string(v.tag) << (c_boundary && v.boundary ? ",boundary" : "") << '\n';
        } else if (*scan) {
            if (s_count * s_step > 2.0 + 1e-12) throw UsageError("scan: count * step must not exceed 2");
            os << "alpha,beta,verdict,boundary,min_d,max_d,d_witness_x,d_witness_value,d_witness_source,"
                  "dbar_witness_x,dbar_witness_value,dbar_witness_source,status\n";
            for (const auto& c : verify::necktie_scan(s_count, s_step, s_threads)) {
                os << format_number(c.alpha) << ',' << format_number(c.beta) << ','
                   << verify::to_string(c.verdict.tag) << ',' << (c.verdict.boundary ? 1 : 0) << ','
                   << format_number(c.min_d) << ',' << format_number(c.max_d) << ','
                   << witness_fields(c.witnesses.d) << ',' << witness_fields(c.witnesses.dbar) << ','
                   << status(c.consistent) << '\n';
                ok = ok && c.consistent;
            }
        } else if (*v_id) {
            const auto r = verify::verify_identity(vi_name, vi_param, parse_grid(vi_grid));
            ok = r.max_error <= vi_tol;
            os << "check,param,max_error,worst_x,tolerance,status\n"
               << vi_name << ',' << format_number(vi_param) << ',' << format_number(r.max_error) << ','
               << format_number(r.worst_x) << ',' << format_number(vi_tol) << ',' << status(ok) << '\n';
        } else if (*v_rep) {
            const auto r = verify::verify_representation(vr_name, {vr_alpha, vr_beta}, parse_grid(vr_grid));
            ok = r.max_error <= vr_tol;
            os << "check,alpha,beta,max_error,worst_x,tolerance,status\n"
               << vr_name << ',' << format_number(vr_alpha) << ',' << format_number(vr_beta) << ','
               << format_number(r.max_error) << ',' << format_number(r.worst_x) << ',' << format_number(vr_tol)
               << ',' << status(ok) << '\n';
        } else if (*v_mel) {
            const auto spec = vm_tilde ? bernstein::DensitySpec::tilde_f_alpha(vm_alpha)
                                       : bernstein::DensitySpec::f_alpha(vm_alpha);
            if (vm_s.empty()) {
                const auto strip = bernstein::mellin_strip(spec);
                for (int k = 1; k <= 5; ++k) vm_s.push_back(strip.lo + (strip.hi - strip.lo) * k / 6.0);
            }
            os << "alpha,s,closed,quadrature,rel_error,tolerance,status\n";
            for (double s : vm_s) {
                const double c = bernstein::mellin_closed(vm_alpha, s, vm_tilde);
                const double q = verify::mellin_quad(spec, s);
                const double e = c == 0.0 ? std::fabs(q) : std::fabs(q - c) / std::fabs(c);
                const bool pass = e <= vm_tol;
                ok = ok && pass;
                os << format_number(vm_alpha) << ',' << format_number(s) << ',' << format_number(c) << ','
                   << format_number(q) << ',' << format_number(e) << ',' << format_number(vm_tol) << ','
                   << status(pass) << '\n';
            }
        } else if (*v_lap) {
            verify::ClosedLaplace which;
            if (vl_which == "D_a1") {
                which = verify::ClosedLaplace::DAlpha1;
            } else if (vl_which == "thmB_a") {
                which = verify::ClosedLaplace::ThmBA;
            } else {
                throw UsageError("--which must be D_a1 or thmB_a");
            }
            const auto fn = [&](double x) {
                return which == verify::ClosedLaplace::DAlpha1
                           ? ml::d_func({vl_alpha, 1.0}, x)
                           : ml::thmb_diff({vl_alpha, 1.0}, x, ml::ThmB::TermMinusF);
            };
            os << "which,alpha,s,numeric,closed,rel_error,tolerance,status\n";
            for (double s : vl_s) {
                const double c = verify::closed_laplace(which, vl_alpha, s);
                const double q = verify::numeric_laplace(fn, s, vl_xmax);
                const double e = c == 0.0 ? std::fabs(q) : std::fabs(q - c) / std::fabs(c);
                const bool pass = e <= vl_tol;
                ok = ok && pass;
                os << vl_which << ',' << format_number(vl_alpha) << ',' << format_number(s) << ','
                   << format_number(q) << ',' << format_number(c) << ',' << format_number(e) << ','
                   << format_number(vl_tol) << ',' << status(pass) << '\n';
            }
        } else if (*v_cm) {
            const auto r = verify::cm_check(cm_function(vc_fn, vc_alpha, vc_beta), parse_grid(vc_grid), vc_order);
            ok = r.passed != vc_expect_fail;
            os << "fn,alpha,beta,order,passed,witness_x,witness_order,violation,status\n"
               << vc_fn << ',' << format_number(vc_alpha) << ',' << format_number(vc_beta) << ','
               << r.max_order_tested << ',' << (r.passed ? 1 : 0) << ',';
            if (r.witness) {
                os << format_number(r.witness->x) << ',' << r.witness->order << ','
                   << format_number(r.witness->violation);
            } else {
                os << ",,";
            }
            os << ',' << status(ok) << '\n';
        } else if (*v_all) {
            suites::SuiteOptions opt;
            opt.seed = seed;
            opt.mc_n = va_n;
            opt.threads = va_threads;
            const auto all = suites::run_all(opt);
            os << suites::to_csv(all);
            for (const auto& s : all) {
                std::size_t failed = 0;
                for (const auto& r : s.rows) failed += !r.pass;
                std::cerr << s.name << ": " << s.rows.size() - failed << '/' << s.rows.size() << " passed\n";
                ok = ok && failed == 0;
            }
        } else if (*mcc) {
            const auto rep = mc::mc_verify(m_name, m_prm, m_n, seed, m_lambdas);
            os << "name,lambda,lhs,rhs,std_error,sigmas,status\n";
            for (const auto& r : rep.rows) {
                os << m_name << ',' << format_number(r.lambda) << ',' << format_number(r.lhs) << ','
                   << format_number(r.rhs) << ',' << format_number(r.std_error) << ','
                   << format_number(r.sigmas) << ',' << status(r.pass) << '\n';
            }
            ok = rep.passed();
        } else if (*dens) {
            const auto spec = density_by_name(d_kind, d_params);
            if (!spec.pointwise()) throw UsageError(d_kind + " has no pointwise density here");
            os << "t,value\n";
            for (double t : parse_grid(d_grid).points) {
                os << format_number(t) << ',' << format_number(bernstein::density_eval(spec, t)) << '\n';
            }
        }
        os.flush();
        return ok ? 0 : 1;
    } catch (const std::logic_error& e) {
        // Invalid parameters, domain, strip and range errors are usage errors.
        std::cerr << "necktie: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "necktie: " << e.what() << '\n';
        return 1;
    }
}
