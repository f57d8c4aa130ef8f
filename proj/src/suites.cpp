#include "necktie/suites.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "necktie/bernstein.hpp"
#include "necktie/error.hpp"
#include "necktie/mlcore.hpp"
#include "necktie/montecarlo.hpp"
#include "necktie/specfun.hpp"
#include "necktie/verify.hpp"

namespace necktie::suites {

namespace {

constexpr double kPi = std::numbers::pi;

std::string kv(std::initializer_list<std::pair<const char*, double>> items) {
    std::string s;
    for (const auto& [k, v] : items) {
        if (!s.empty()) s += ';';
        s += k;
        s += '=';
        s += format_number(v);
    }
    return s;
}

double rel_err(double v, double ref) {
    return ref == 0.0 ? std::fabs(v) : std::fabs(v - ref) / std::fabs(ref);
}

Row judged(std::string check, std::string params, std::optional<double> x, std::optional<double> value,
           std::optional<double> reference, double error, double tol) {
    return {std::move(check), std::move(params), x, value, reference, error, tol, error <= tol};
}

// Row for a check that threw: reported as a failure, never swallowed.
Row thrown(std::string check, std::string params, const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
    }
    return {std::move(check), std::move(params) + ";error=" + msg, {}, {}, {}, 0.0, 0.0, false};
}

template <class F>
void guarded(SuiteResult& out, const std::string& check, const std::string& params, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        out.rows.push_back(thrown(check, params, e));
    }
}

const verify::Grid& tenth_grid() {
    static const verify::Grid g = verify::Grid::linspace(0.1, 5.0, 50);
    return g;
}

}  // namespace

bool SuiteResult::passed() const {
    for (const auto& r : rows) {
        if (!r.pass) return false;
    }
    return true;
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SuiteResult identities(const SuiteOptions&) {
    SuiteResult out{"identities", {}};
    constexpr double kTol = 1e-10;
    const auto run = [&](const char* name, double param, bool uses_param) {
        const std::string p = uses_param ? kv({{"beta", param}}) : "";
        guarded(out, name, p, [&] {
            const auto r = verify::verify_identity(name, param, tenth_grid());
            out.rows.push_back(judged(name, p, r.worst_x, {}, {}, r.max_error, kTol));
        });
    };
    for (double b : {0.5, 1.0, 1.5, 2.0}) run("D1beta", b, true);
    for (double b : {1.0, 1.5, 2.0}) run("ThmB_alpha1", b, true);
    for (double b : {0.75, 1.0, 1.5}) run("Dhalf", b, true);
    run("Dbar21", 0.0, false);
    run("Dbar41", 0.0, false);
    run("Ehalf", 0.0, false);
    for (double b : {1.0, 1.5, 2.0, 3.0}) run("E1beta_inc", b, true);
    return out;
}

SuiteResult representations(const SuiteOptions&) {
    SuiteResult out{"representations", {}};
    constexpr double kTol = 1e-6;
    const auto grid = verify::Grid::linspace(0.1, 5.0, 20);
    const auto run = [&](const char* name, double a, double b) {
        const std::string p = kv({{"alpha", a}, {"beta", b}});
        guarded(out, name, p, [&] {
            const auto r = verify::verify_representation(name, {a, b}, grid);
            out.rows.push_back(judged(name, p, r.worst_x, {}, {}, r.max_error, kTol));
        });
    };
    for (double a : {0.6, 0.75, 0.9}) run("b1", a, 1.0);
    for (double a : {0.3, 0.5, 0.7}) {
        run("Exa", a, 1.0);
        run("FHat", a, 1.0);
        run("ThmB_F", a, 1.0);
        run("ThmB_LbF", a, 1.0);
    }
    for (double a : {1.25, 1.5, 1.75}) {
        run("b2", a, 1.0);
        run("Eaxx", a, 1.0);
        run("UPow", a, 1.0);
        run("SizeBias", a, 1.0);
        run("ThmB_F", a, 1.0);
        run("ThmB_LbF", a, 1.0);
    }
    run("Bernstein", 1.5, 2.0);
    run("Bernstein", 0.7, 1.4);
    run("Bracket", 0.7, 0.5);
    run("Bracket", 1.5, 1.5);
    run("Bracket", 0.4, 1.2);
    run("Remark2Line1", 1.5, 1.5);
    run("Remark2Line3", 1.5, 1.5);
    return out;
}

SuiteResult mellin(const SuiteOptions&) {
    SuiteResult out{"mellin", {}};
    const auto interior = [](double lo, double hi, int k, int n) { return lo + (hi - lo) * k / (n + 1); };

    for (double a : {0.6, 0.75, 0.9}) {
        const auto spec = bernstein::DensitySpec::f_alpha(a);
        for (int k = 1; k <= 5; ++k) {
            const double s = interior(-a, a - 1.0, k, 5);
            const std::string p = kv({{"alpha", a}});
            guarded(out, "closed_vs_quad", p, [&] {
                const double c = bernstein::mellin_closed(a, s, false);
                const double q = verify::mellin_quad(spec, s);
                out.rows.push_back(judged("closed_vs_quad", p, s, q, c, rel_err(q, c), 1e-7));
            });
        }
    }
    for (double a : {0.3, 0.45}) {
        const auto spec = bernstein::DensitySpec::tilde_f_alpha(a);
        const double hi = ml::n_alpha(a) * a - 1.0;
        for (int k = 1; k <= 5; ++k) {
            const double s = interior(-a, hi, k, 5);
            const std::string p = kv({{"alpha", a}});
            guarded(out, "tilde_closed_vs_quad", p, [&] {
                const double c = bernstein::mellin_closed(a, s, true);
                const double q = verify::mellin_quad(spec, s);
                out.rows.push_back(judged("tilde_closed_vs_quad", p, s, q, c, rel_err(q, c), 1e-7));
            });
        }
    }

    // Gamma(1+s)Gamma(a)M_a(s)/Gamma(a+s) against E Z^s * E X^s * (E G^(s/a) M_g(s)).
    for (double a : {0.6, 0.75, 0.9}) {
        const auto [pp, qq] = mc::rational_alpha(a);
        for (int k = 1; k <= 9; ++k) {
            const double s = interior(-a, a - 1.0, k, 9);
            const std::string p = kv({{"alpha", a}});
            guarded(out, "three_factor", p, [&] {
                const double lhs = std::exp(std::lgamma(1.0 + s) + std::lgamma(a) - std::lgamma(a + s)) *
                                   bernstein::mellin_closed(a, s, false);
                const double z = std::exp(std::lgamma(1.0 - s / a) - std::lgamma(1.0 - s));
                const double x = mc::xrational_mellin(pp, qq, s);
                const double g_pow = std::exp(std::lgamma((1.0 + s) / a) - std::lgamma(1.0 / a));
                const double m_g = std::tgamma(1.0 - (1.0 + s) / a) / -std::tgamma(1.0 - 1.0 / a);
                const double rhs = z * x * g_pow * m_g;
                out.rows.push_back(judged("three_factor", p, s, lhs, rhs, rel_err(lhs, rhs), 1e-10));
            });
        }
    }

    const double exact = 8.0 * std::sqrt(3.0) / 9.0;
    const std::string p = kv({{"alpha", 0.75}});
    guarded(out, "M_3/4(-1/2)_closed", p, [&] {
        const double c = bernstein::mellin_closed(0.75, -0.5, false);
        out.rows.push_back(judged("M_3/4(-1/2)_closed", p, -0.5, c, exact, rel_err(c, exact), 1e-14));
    });
    guarded(out, "M_3/4(-1/2)_quad", p, [&] {
        const double q = verify::mellin_quad(bernstein::DensitySpec::f_alpha(0.75), -0.5);
        out.rows.push_back(judged("M_3/4(-1/2)_quad", p, -0.5, q, exact, rel_err(q, exact), 1e-7));
    });
    return out;
}

SuiteResult necktie_scan(const SuiteOptions& opt) {
    SuiteResult out{"scan", {}};
    for (const auto& c : verify::necktie_scan(40, 0.05, opt.threads)) {
        std::string p = kv({{"alpha", c.alpha}, {"beta", c.beta}});
        p += ";verdict=";
        p += verify::to_string(c.verdict.tag);
        if (c.verdict.boundary) p += ";boundary";
        if (c.witnesses.d) p += ";d_witness_x=" + format_number(c.witnesses.d->x);
        if (c.witnesses.dbar) p += ";dbar_witness_x=" + format_number(c.witnesses.dbar->x);
        // value/reference carry min and max of D over the sign-check grid.
        Row r{"cell", std::move(p), {}, c.min_d, c.max_d, c.consistent ? 0.0 : 1.0, 0.0, c.consistent};
        out.rows.push_back(std::move(r));
    }
    return out;
}

SuiteResult cm(const SuiteOptions&) {
    SuiteResult out{"cm", {}};
    constexpr int kOrder = 8;
    const auto grid = verify::Grid::linspace(0.2, 4.0, 12);
    // Passing rows report 0; a failure reports the witness violation.
    const auto expect_pass = [&](const std::string& check, const std::string& p, auto&& fn) {
        guarded(out, check, p, [&] {
            const auto r = verify::cm_check(fn, grid, kOrder);
            if (r.passed) {
                out.rows.push_back(judged(check, p, {}, {}, {}, 0.0, 0.0));
            } else {
                out.rows.push_back(judged(check, p + ";order=" + std::to_string(r.witness->order),
                                          r.witness->x, {}, {}, r.witness->violation, 0.0));
            }
        });
    };

    const std::pair<double, double> region_points[] = {
        {0.6, 0.6},  {0.3, 0.7},  {0.7, 1.4}, {0.4, 1.0},  {0.25, 1.75}, {0.3, 0.3}, {0.3, 0.2},
        {0.8, 0.2},  {0.95, 0.05}, {0.05, 0.95}, {1.5, 1.0}, {1.2, 1.8},  {1.5, 2.0}, {2.0, 1.0},
        {2.0, 2.0},  {0.5, 0.5},
    };
    for (const auto& [a, b] : region_points) {
        const auto v = verify::classify({a, b});
        std::string p = kv({{"alpha", a}, {"beta", b}}) + ";verdict=" + verify::to_string(v.tag);
        if (v.boundary) p += ";boundary";
        if (v.tag != verify::Verdict::DCm && v.tag != verify::Verdict::DbarCm &&
            v.tag != verify::Verdict::ZeroFunction) {
            out.rows.push_back({"region", p + ";no_claim", {}, {}, {}, 1.0, 0.0, false});
            continue;
        }
        const double sign = v.tag == verify::Verdict::DbarCm ? -1.0 : 1.0;
        expect_pass("region", p, [&](double x) { return sign * ml::d_func({a, b}, x); });
    }

    for (double a : {0.3, 0.7, 1.5, 2.0}) {
        for (double b : {1.0, 1.5}) {
            const auto pair = a < 1.0 ? std::pair{ml::ThmB::TermMinusF, ml::ThmB::LbFMinusTerm}
                                      : std::pair{ml::ThmB::FMinusTerm, ml::ThmB::TermMinusLbF};
            for (auto w : {pair.first, pair.second}) {
                const std::string p =
                    kv({{"alpha", a}, {"beta", b}}) + ";which=" + ml::to_string(w);
                expect_pass("thmB", p, [&](double x) { return ml::thmb_diff({a, b}, x, w); });
            }
        }
    }

    for (const auto& [a, b] : {std::pair{0.7, 0.7}, std::pair{0.4, 0.6}}) {
        expect_pass("rescaled", kv({{"alpha", a}, {"beta", b}}),
                    [&](double x) { return ml::d_func({a, b}, std::pow(x, 1.0 / a)); });
    }

    const auto prop1 = [](double a) {
        return [a](double x) { return ml::thmb_diff({a, 1.0}, std::pow(x, 1.0 / a), ml::ThmB::TermMinusF); };
    };
    for (double a : {0.5, 0.6, 0.8}) expect_pass("prop1", kv({{"alpha", a}}), prop1(a));

    // Below 1/2 the function is not CM; the check must find a witness.
    const std::string p = kv({{"alpha", 0.4}});
    guarded(out, "prop1_must_fail", p, [&] {
        const auto r = verify::cm_check(prop1(0.4), grid, kOrder);
        if (r.passed) {
            out.rows.push_back({"prop1_must_fail", p + ";no_witness", {}, {}, {}, 1.0, 0.0, false});
        } else {
            out.rows.push_back({"prop1_must_fail", p + ";order=" + std::to_string(r.witness->order),
                                r.witness->x, r.witness->violation, {}, 0.0, 0.0, true});
        }
    });
    return out;
}

SuiteResult polynomials(const SuiteOptions&) {
    SuiteResult out{"polynomials", {}};
    constexpr double kFloor = 1e-12;
    const auto nonneg = [&](const char* check, double a, double b) {
        const std::string p = kv({{"alpha", a}, {"beta", b}});
        guarded(out, check, p, [&] {
            const auto m = bernstein::poly_nonneg(a, b);
            out.rows.push_back(judged(check, p, m.argmin, m.min_value, {}, std::max(0.0, -m.min_value), kFloor));
        });
    };
    for (double a : {0.1, 0.2, 0.3, 0.4, 0.5}) nonneg("case_i", a, a);
    for (double a : {0.5, 0.6, 0.7, 0.8, 0.9}) nonneg("case_ii", a, 1.0 - a);

    // Corrected polynomial against (1-b) f + t f', relative to the size of the two terms.
    const auto ts = verify::Grid::logspace(0.05, 20.0, 200);
    for (const auto& [a, b] : {std::pair{0.3, 0.2}, std::pair{0.7, 0.25}, std::pair{0.5, 0.5}}) {
        const std::string p = kv({{"alpha", a}, {"beta", b}});
        guarded(out, "htilde_vs_direct", p, [&] {
            const auto f = bernstein::DensitySpec::f_alpha(a);
            double worst = 0.0, worst_t = ts.points.front();
            for (double t : ts.points) {
                const double ft = bernstein::density_eval(f, t);
                const double dt = bernstein::f_alpha_prime(a, t);
                const double direct = (1.0 - b) * ft + t * dt;
                const double q = bernstein::denominator(a, t);
                const double poly = std::sin(kPi * a) * bernstein::htilde_poly(a, b, t) / (kPi * q * q);
                const double scale = std::max(std::fabs(direct), std::fabs((1.0 - b) * ft) + std::fabs(t * dt));
                const double e = std::fabs(poly - direct) / scale;
                if (e > worst) worst = e, worst_t = t;
            }
            out.rows.push_back(judged("htilde_vs_direct", p, worst_t, {}, {}, worst, 1e-9));
        });
    }

    struct Case {
        double a, b, c, rho, threshold;
        bool holds;
    };
    for (const auto& k : {Case{1, 2, 1, 1, 1, true}, Case{0.99, 2, 1, 1, 1, false}, Case{4, 3, 1, 2, 4, true}}) {
        const std::string p = kv({{"a", k.a}, {"b", k.b}, {"c", k.c}, {"rho", k.rho}});
        guarded(out, "lemma_threshold", p, [&] {
            const auto r = bernstein::lemma_threshold(k.a, k.b, k.c, k.rho);
            // Exact threshold, the expected verdict, and a grid that agrees with it.
            const bool grid_agrees = k.holds ? r.grid_min >= -1e-12 : r.grid_min < 0.0;
            const bool ok = r.threshold == k.threshold && r.holds == k.holds && grid_agrees;
            out.rows.push_back({"lemma_threshold", p + (r.holds ? ";holds" : ";fails"), r.grid_argmin,
                                r.threshold, k.threshold, std::fabs(r.threshold - k.threshold), 0.0, ok});
        });
    }
    return out;
}

SuiteResult laplace(const SuiteOptions&) {
    SuiteResult out{"laplace", {}};
    for (double a : {0.3, 0.6, 0.75}) {
        for (double s : {0.5, 1.0, 2.0, 4.0}) {
            for (auto w : {verify::ClosedLaplace::DAlpha1, verify::ClosedLaplace::ThmBA}) {
                const std::string check = verify::to_string(w);
                const std::string p = kv({{"alpha", a}});
                guarded(out, check, p, [&] {
                    const double c = verify::closed_laplace(w, a, s);
                    const auto fn = [&](double x) {
                        return w == verify::ClosedLaplace::DAlpha1
                                   ? ml::d_func({a, 1.0}, x)
                                   : ml::thmb_diff({a, 1.0}, x, ml::ThmB::TermMinusF);
                    };
                    const double q = verify::numeric_laplace(fn, s, 40.0);
                    out.rows.push_back(judged(check, p, s, q, c, rel_err(q, c), 1e-6));
                });
            }
        }
    }
    return out;
}

namespace {

void add_mc(SuiteResult& out, const SuiteOptions& opt, std::uint32_t& stream, const char* name,
            mc::McParams prm, const char* check_suffix = "") {
    static const std::vector<double> lambdas{0.5, 1.0, 2.0};
    std::string check = std::string(name) + check_suffix;
    std::string p = kv({{"alpha", prm.alpha}});
    if (std::string_view(name) == "Sabb") p += ";beta=" + format_number(prm.beta);
    const rng::Seed seed{opt.seed.value, stream++};
    guarded(out, check, p, [&] {
        const auto rep = mc::mc_verify(name, prm, opt.mc_n, seed, lambdas);
        for (const auto& r : rep.rows) {
            const double band = r.std_error > 0.0
                                    ? std::max(prm.sigma_band, prm.rel_floor * std::fabs(r.rhs) / r.std_error)
                                    : prm.sigma_band;
            out.rows.push_back({check, p, r.lambda, r.lhs, r.rhs, r.sigmas, band, r.pass});
        }
    });
}

// A sampler with alpha shifted by 0.05 must land beyond 10 sigma.
void add_control(SuiteResult& out, const SuiteOptions& opt, std::uint32_t& stream, const char* name,
                 mc::McParams prm) {
    static const std::vector<double> lambdas{0.5, 1.0, 2.0};
    constexpr double kMinSigmas = 10.0;
    prm.sampler_shift = 0.05;
    const std::string check = std::string(name) + "_shifted_control";
    const std::string p = kv({{"alpha", prm.alpha}, {"shift", prm.sampler_shift}});
    const rng::Seed seed{opt.seed.value, stream++};
    guarded(out, check, p, [&] {
        const auto rep = mc::mc_verify(name, prm, opt.mc_n, seed, lambdas);
        double worst = 0.0, at = 0.0;
        for (const auto& r : rep.rows) {
            if (r.sigmas > worst) worst = r.sigmas, at = r.lambda;
        }
        out.rows.push_back({check, p, at, worst, kMinSigmas, worst, kMinSigmas, worst > kMinSigmas});
    });
}

}  // namespace

SuiteResult monte_carlo(const SuiteOptions& opt) {
    SuiteResult out{"monte_carlo", {}};
    std::uint32_t stream = 0;
    const auto at = [](double a, double b = 1.0) {
        mc::McParams p;
        p.alpha = a;
        p.beta = b;
        return p;
    };
    add_mc(out, opt, stream, "StableLT", at(0.5));
    add_mc(out, opt, stream, "MLLT", at(0.7));
    for (double a : {1.5, 2.0}) {
        add_mc(out, opt, stream, "ML2LT", at(a));
        // The closed transform against numeric integration of the series density.
        for (double l : {0.5, 1.0, 2.0}) {
            const std::string p = kv({{"alpha", a}});
            guarded(out, "ML2LT_closed_vs_numeric", p, [&] {
                const double c = -verify::closed_laplace(verify::ClosedLaplace::DAlpha1, a, l);
                const double q = verify::numeric_laplace(
                    [&](double x) { return ml::dbar_func({a, 1.0}, x); }, l, 35.0);
                out.rows.push_back(judged("ML2LT_closed_vs_numeric", p, l, q, c, rel_err(q, c), 1e-6));
            });
        }
    }
    for (double a : {0.4, 0.6, 0.8}) {
        add_mc(out, opt, stream, "Pollard", at(a));
        add_mc(out, opt, stream, "SizeBias", at(a));
        add_mc(out, opt, stream, "MABFactor", at(a));
    }
    add_mc(out, opt, stream, "Sabb", at(1.5, 2.0));
    for (double a : {0.4, 0.7}) add_mc(out, opt, stream, "Exx", at(a));
    add_mc(out, opt, stream, "Eaxx", at(1.5));
    add_mc(out, opt, stream, "Prop1", at(0.6));
    add_mc(out, opt, stream, "XMean", at(0.5));
    add_control(out, opt, stream, "StableLT", at(0.5));
    add_control(out, opt, stream, "Sabb", at(1.5, 2.0));
    return out;
}

SuiteResult factorization(const SuiteOptions& opt) {
    SuiteResult out{"factorization", {}};
    std::uint32_t stream = 100;
    mc::McParams p;
    p.alpha = 2.0 / 3.0;
    p.rel_floor = 0.01;
    add_mc(out, opt, stream, "Factor_daa", p);
    return out;
}

std::vector<SuiteResult> run_all(const SuiteOptions& opt) {
    return {identities(opt),   representations(opt), mellin(opt),
            necktie_scan(opt), cm(opt),              polynomials(opt),
            laplace(opt),      monte_carlo(opt),     factorization(opt)};
}

std::string to_csv(const std::vector<SuiteResult>& suites) {
    std::ostringstream os;
    os << "suite,check,params,x,value,reference,error,tolerance,status\n";
    const auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& s : suites) {
        for (const auto& r : s.rows) {
            os << s.name << ',' << r.check << ',' << r.params << ',' << opt(r.x) << ',' << opt(r.value) << ','
               << opt(r.reference) << ',' << format_number(r.error) << ',' << format_number(r.tolerance) << ','
               << (r.pass ? "PASS" : "FAIL") << '\n';
        }
    }
    return os.str();
}

}  // namespace necktie::suites
