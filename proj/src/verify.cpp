#include "necktie/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "necktie/error.hpp"
#include "necktie/specfun.hpp"

namespace necktie::verify {

using bernstein::DensitySpec;
using bernstein::Kind;
using ml::AlphaBeta;
using ml::ThmB;
using specfun::rgamma;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b) {
    return std::fabs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                   std::max({std::fabs(a), std::fabs(b), 1.0});
}
bool geq(double a, double b) { return a > b || near(a, b); }
bool leq(double a, double b) { return a < b || near(a, b); }

double sum_pieces(const quadrature::Integrand& f, const quadrature::Options& o) {
    return quadrature::finite(f, 0.0, 1.0, o).value + quadrature::half_line(f, 1.0, o).value;
}

double laplace_one(const DensitySpec& spec, double x, const QuadratureConfig& cfg);

double laplace_pointwise(const DensitySpec& spec, double x, const QuadratureConfig& cfg) {
    const auto o = cfg.options();
    const auto tail = [&](double t) { return std::exp(-x * t) * bernstein::density_eval(spec, t); };
    double head;
    if (cfg.endpoint_exponent_hint) {
        // t = w^p, p = 1/(1+gamma): dt = p w^(p-1) dw absorbs t^gamma.
        const double p = 1.0 / (1.0 + *cfg.endpoint_exponent_hint);
        head = quadrature::finite(
                   [&](double w) {
                       const double t = std::pow(w, p);
                       if (!(t > 0.0)) return 0.0;
                       return p * std::pow(w, p - 1.0) * tail(t);
                   },
                   0.0, 1.0, o)
                   .value;
    } else {
        head = quadrature::finite(tail, 0.0, 1.0, o).value;
    }
    return head + quadrature::half_line(tail, 1.0, o).value;
}

// E exp(-y B) for B ~ Beta(a, b).
double beta_laplace(const DensitySpec& beta, double y) {
    const double a = beta.params[0];
    const double b = beta.params[1];
    return boost::math::hypergeometric_1F1(a, a + b, -y);
}

DensitySpec rest_of(std::vector<DensitySpec> factors) {
    if (factors.size() == 1) return factors[0];
    return DensitySpec::composite(std::move(factors), 1.0);
}

double laplace_composite(const DensitySpec& spec, double x, const QuadratureConfig& cfg) {
    double scale = 1.0;
    std::vector<DensitySpec> betas;
    std::vector<DensitySpec> others;
    for (const auto& f : spec.factors) {
        switch (f.kind) {
            case Kind::PointMass: scale *= f.params[0]; break;
            case Kind::Zero: return 0.0;
            case Kind::BetaKernel: betas.push_back(f); break;
            default: others.push_back(f);
        }
    }
    const double y = x * scale;
    const double pre = spec.prefactor;
    const auto o = cfg.options();
    if (betas.empty() && others.empty()) return pre * std::exp(-y);
    if (others.empty() && betas.size() == 1) return pre * beta_laplace(betas[0], y);
    if (betas.empty() && others.size() == 1) return pre * laplace_one(others[0], y, cfg);
    if (betas.size() == 1 && others.size() == 1) {
        const DensitySpec& g = others[0];
        if (!g.pointwise()) {
            throw DomainError(std::string("laplace_quad: ") + bernstein::to_string(g.kind) +
                              " has no pointwise density");
        }
        // Swap the kernel: int g(v) E exp(-y v B) dv.
        const auto f = [&](double v) {
            return bernstein::density_eval(g, v) * beta_laplace(betas[0], y * v);
        };
        return pre * sum_pieces(f, o);
    }
    // Peel one factor and integrate the Laplace transform of the rest.
    DensitySpec outer;
    std::vector<DensitySpec> rest;
    if (!betas.empty()) {
        outer = betas[0];
        rest.assign(betas.begin() + 1, betas.end());
        rest.insert(rest.end(), others.begin(), others.end());
    } else {
        outer = others[0];
        rest.assign(others.begin() + 1, others.end());
    }
    const DensitySpec inner = rest_of(std::move(rest));
    const auto f = [&](double u) {
        return bernstein::density_eval(outer, u) * laplace_one(inner, y * u, cfg);
    };
    if (outer.kind == Kind::BetaKernel) return pre * quadrature::finite(f, 0.0, 1.0, o).value;
    return pre * sum_pieces(f, o);
}

double laplace_one(const DensitySpec& spec, double x, const QuadratureConfig& cfg) {
    switch (spec.kind) {
        case Kind::Zero: return 0.0;
        case Kind::PointMass: return std::exp(-x * spec.params[0]);
        case Kind::MonomialSum: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < spec.params.size(); i += 2) {
                const double c = spec.params[i];
                const double g = spec.params[i + 1];
                if (!(g < 1.0)) throw DomainError("laplace_quad: monomial t^-g needs g < 1");
                s += c * std::tgamma(1.0 - g) * std::pow(x, g - 1.0);
            }
            return s;
        }
        case Kind::BetaKernel: return beta_laplace(spec, x);
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& t : spec.factors) s += laplace_one(t, x, cfg);
            return spec.prefactor * s;
        }
        case Kind::Composite: return laplace_composite(spec, x, cfg);
        case Kind::FactorizedH:
        case Kind::FactorizedHTilde:
            throw DomainError(std::string("laplace_quad: ") + bernstein::to_string(spec.kind) +
                              " has no pointwise density");
        default: return laplace_pointwise(spec, x, cfg);
    }
}

double signed_log_power(double s, double t, double v) {
    if (v == 0.0) return 0.0;
    const double m = std::exp(s * std::log(t) + std::log(std::fabs(v)));
    return v < 0.0 ? -m : m;
}

}  // namespace

void Grid::validate() const {
    if (points.empty()) throw ParameterError("Grid: empty");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i]) || !(points[i] > 0.0)) {
            throw ParameterError("Grid: points must be finite and positive");
        }
        if (i > 0 && !(points[i] > points[i - 1])) {
            throw ParameterError("Grid: points must be strictly increasing");
        }
    }
}

Grid Grid::linspace(double lo, double hi, int count) {
    if (count < 1 || count > 1000000) throw ParameterError("Grid: count must lie in [1, 1e6]");
    Grid g;
    if (count == 1) {
        g.points = {lo};
    } else {
        for (int i = 0; i < count; ++i) g.points.push_back(lo + (hi - lo) * i / (count - 1));
        g.points.back() = hi;
    }
    g.validate();
    return g;
}

Grid Grid::logspace(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw ParameterError("Grid: log grid needs positive ends");
    if (count < 1 || count > 1000000) throw ParameterError("Grid: count must lie in [1, 1e6]");
    Grid g;
    const double l0 = std::log(lo);
    const double l1 = std::log(hi);
    for (int i = 0; i < count; ++i) {
        g.points.push_back(count == 1 ? lo : std::exp(l0 + (l1 - l0) * i / (count - 1)));
    }
    if (count > 1) {
        g.points.front() = lo;
        g.points.back() = hi;
    }
    g.validate();
    return g;
}

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0 && abs_tol <= 1e-4) || !(rel_tol > 0.0 && rel_tol <= 1e-4)) {
        throw ParameterError("QuadratureConfig: tolerances must lie in (0, 1e-4]");
    }
    if (max_refinements < 3 || max_refinements > 30) {
        throw ParameterError("QuadratureConfig: max_refinements must lie in [3, 30]");
    }
    if (endpoint_exponent_hint && !(*endpoint_exponent_hint > -1.0)) {
        throw ParameterError("QuadratureConfig: endpoint exponent must exceed -1");
    }
}

quadrature::Options QuadratureConfig::options() const {
    validate();
    quadrature::Options o;
    o.rel_tol = rel_tol;
    o.abs_tol = abs_tol;
    o.max_level = std::min(max_refinements, 14);
    return o;
}

double laplace_quad(const DensitySpec& spec, double x, const QuadratureConfig& cfg) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("laplace_quad: requires x > 0");
    cfg.validate();
    return laplace_one(spec, x, cfg);
}

std::vector<double> laplace_quad(const DensitySpec& spec, std::span<const double> xs,
                                 const QuadratureConfig& cfg) {
    cfg.validate();
    for (double x : xs) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("laplace_quad: requires x > 0");
    }
    std::vector<double> out;
    out.reserve(xs.size());
    const bool plain = spec.kind != Kind::Composite && spec.kind != Kind::Sum && spec.pointwise();
    if (!plain || cfg.endpoint_exponent_hint) {
        for (double x : xs) out.push_back(laplace_one(spec, x, cfg));
        return out;
    }
    const auto o = cfg.options();
    const auto f = [&](double t) { return bernstein::density_eval(spec, t); };
    const auto head = quadrature::laplace_batch(f, 0.0, 1.0, xs, o);
    const auto tail = quadrature::laplace_batch(f, 1.0, kInf, xs, o);
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(head[i].value + tail[i].value);
    return out;
}

double stieltjes_quad(const DensitySpec& spec, double s, const QuadratureConfig& cfg) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("stieltjes_quad: requires s > 0");
    if (!spec.pointwise()) throw DomainError("stieltjes_quad: spec has no pointwise density");
    const auto f = [&](double t) { return bernstein::density_eval(spec, t) / (s + t); };
    return sum_pieces(f, cfg.options());
}

double mellin_quad(const DensitySpec& spec, double s, const QuadratureConfig& cfg) {
    const auto strip = bernstein::mellin_strip(spec);
    if (!strip.contains(s)) {
        throw StripError("mellin_quad: s outside the convergence strip (" +
                         std::to_string(strip.lo) + ", " + std::to_string(strip.hi) + ")");
    }
    const auto o = cfg.options();
    switch (spec.kind) {
        case Kind::Zero: return 0.0;
        case Kind::PointMass: return std::pow(spec.params[0], s);
        default: break;
    }
    if (!spec.pointwise()) throw DomainError("mellin_quad: spec has no pointwise density");
    const auto f = [&](double t) { return signed_log_power(s, t, bernstein::density_eval(spec, t)); };
    if (std::isfinite(spec.support.hi)) {
        return quadrature::finite(f, spec.support.lo, spec.support.hi, o).value;
    }
    // Finite strip ends are the power rates: t^s f ~ t^(q-1) at 0 with q = s - lo,
    // and ~ t^(-q-1) at infinity with q = hi - s. With t = w^(+-1/q) each piece
    // tends to a constant as w -> 0. Beyond t = 1e-+60 that constant is used
    // directly, since w^(1/q) underflows long before w does when q is small.
    const auto flat = [&](double q, double sign) {
        const auto g = [&, q, sign](double w) {
            const double t = std::exp(sign * std::log(w) / q);
            return signed_log_power(s + 1.0, t, bernstein::density_eval(spec, t)) / (q * w);
        };
        const double wc = std::exp(-60.0 * std::numbers::ln10 * q);
        return quadrature::finite(g, wc, 1.0, o).value + wc * g(wc);
    };
    const double head = std::isfinite(strip.lo) ? flat(s - strip.lo, 1.0) : quadrature::finite(f, 0.0, 1.0, o).value;
    const double tail = std::isfinite(strip.hi) ? flat(strip.hi - s, -1.0) : quadrature::half_line(f, 1.0, o).value;
    return head + tail;
}

double numeric_laplace(const std::function<double(double)>& fn, double s, double x_max,
                       const QuadratureConfig& cfg) {
    if (!(s > 0.0) || !(x_max > 0.0)) throw DomainError("numeric_laplace: requires s, x_max > 0");
    return quadrature::finite([&](double x) { return std::exp(-s * x) * fn(x); }, 0.0, x_max,
                              cfg.options())
        .value;
}

const char* to_string(ClosedLaplace which) {
    return which == ClosedLaplace::DAlpha1 ? "D_a1" : "thmB_a";
}

double closed_laplace(ClosedLaplace which, double a, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("closed_laplace: requires s > 0");
    if (!(a > 0.0)) throw DomainError("closed_laplace: requires alpha > 0");
    const double L = std::log(s);
    if (which == ClosedLaplace::DAlpha1) {
        if (a == 1.0) return 0.0;
        if (L == 0.0) return (1.0 - a) / a;
        return -std::expm1((a - 1.0) * L) / std::expm1(a * L);
    }
    if (a == 1.0) return 0.0;
    const double e = s - 1.0;
    if (std::fabs(e) < 1e-4) {
        // Second-order expansion; the two poles at s = 1 cancel.
        return (12.0 - 12.0 * a + e * (12.0 * a - 2.0 * a * a - 10.0) +
                e * e * (3.0 * a * a - 12.0 * a + 9.0)) /
               (24.0 * a);
    }
    return 1.0 / (a * e) - std::exp((a - 1.0) * L) / std::expm1(a * L);
}

CmReport cm_check(const std::function<double(double)>& fn, const Grid& grid, int order,
                  const CmOptions& opt) {
    if (order < 0 || order > 10) throw ParameterError("cm_check: order must lie in [0, 10]");
    grid.validate();
    CmReport rep;
    rep.max_order_tested = order;
    std::vector<double> d(order + 1);
    for (double x : grid.points) {
        const double h = std::max(opt.step_fraction * x, opt.min_step);
        double scale = 0.0;
        for (int j = 0; j <= order; ++j) {
            d[j] = fn(x + j * h);
            scale = std::max(scale, std::fabs(d[j]));
        }
        // After pass k, d[0] holds the k-th forward difference at x.
        for (int k = 0; k <= order; ++k) {
            if (k > 0) {
                for (int j = 0; j + k <= order; ++j) d[j] = d[j + 1] - d[j];
            }
            const double signed_diff = (k % 2 == 0) ? d[0] : -d[0];
            const double tol = opt.noise * std::ldexp(1.0, k) * scale;
            if (signed_diff < -tol) {
                rep.passed = false;
                rep.witness = CmWitness{x, k, scale > 0.0 ? -signed_diff / scale : -signed_diff};
                return rep;
            }
        }
    }
    return rep;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::DCm: return "D_CM";
        case Verdict::DbarCm: return "Dbar_CM";
        case Verdict::ZeroFunction: return "ZeroFunction";
        case Verdict::Neither: return "Neither";
        case Verdict::NeitherOpenRegion: return "NeitherOpenRegion";
    }
    return "?";
}

NecktieVerdict classify(AlphaBeta ab) {
    const double a = ab.alpha;
    const double b = ab.beta;
    if (near(a, 1.0)) return {Verdict::ZeroFunction, false};
    if (near(a, 0.5) && near(b, 0.5)) return {Verdict::ZeroFunction, false};
    if (a < 1.0) {
        const double hi = std::max(a, 1.0 - a);
        const double lo = std::min(a, 1.0 - a);
        if (geq(b, hi)) return {Verdict::DCm, near(b, hi)};
        if (leq(b, lo)) return {Verdict::DbarCm, near(b, lo)};
        return {Verdict::Neither, false};
    }
    if (leq(a, 2.0)) {
        if (geq(b, 1.0)) return {Verdict::DbarCm, near(b, 1.0) || near(a, 2.0)};
        return {Verdict::Neither, near(a, 2.0)};
    }
    if (leq(a, 4.0)) return {Verdict::NeitherOpenRegion, false};
    return {Verdict::Neither, false};
}

double dbar_hankel(AlphaBeta ab, double x) {
    if (!(x > 0.0)) throw DomainError("dbar_hankel: requires x > 0");
    const auto rho = DensitySpec::hankel_bracket(ab.alpha, ab.beta);
    quadrature::Options o;
    o.rel_tol = 1e-10;
    o.max_level = 12;
    // u = x t.
    const auto r = quadrature::half_line(
        [&](double u) { return std::exp(-u) * bernstein::density_eval(rho, u / x); }, 0.0, o);
    if (!(std::fabs(r.value) > 10.0 * r.error)) {
        throw ConvergenceError("dbar_hankel: sign not resolved", r.value, r.error);
    }
    return std::pow(x, -ab.beta) / kPi * r.value;
}

const char* to_string(WitnessSource s) {
    switch (s) {
        case WitnessSource::Window: return "window";
        case WitnessSource::SmallX: return "small_x";
        case WitnessSource::LargeX: return "large_x";
    }
    return "?";
}

WitnessPair find_sign_witnesses(AlphaBeta ab) {
    WitnessPair w;
    const bool hankel_ok = ab.alpha < 2.0 && ab.beta < 2.0;
    const auto d_at = [&](double x) -> std::optional<double> {
        try {
            if (x > 10.0 && hankel_ok) return -dbar_hankel(ab, x);
            return ml::d_func(ab, x);
        } catch (const OutOfRangeError&) {
        } catch (const ConvergenceError&) {
        }
        return std::nullopt;
    };
    const auto probe = [&](double x, WitnessSource src) {
        const auto v = d_at(x);
        if (!v) return;
        if (*v < 0.0 && !w.d) w.d = SignWitness{x, *v, src};
        if (*v > 0.0 && !w.dbar) w.dbar = SignWitness{x, *v, src};
    };
    const auto both = [&] { return w.d && w.dbar; };
    for (double x : Grid::logspace(1e-3, 50.0, 200).points) {
        probe(x, WitnessSource::Window);
        if (both()) return w;
    }
    for (double x : Grid::logspace(1e-8, 1e-3, 60).points) {
        probe(x, WitnessSource::SmallX);
        if (both()) return w;
    }
    if (hankel_ok) {
        for (double x : Grid::logspace(50.0, 1e6, 120).points) {
            probe(x, WitnessSource::LargeX);
            if (both()) return w;
        }
    }
    return w;
}

std::vector<ScanCell> necktie_scan(int count, double step, unsigned threads) {
    if (count < 1 || !(step > 0.0)) throw ParameterError("necktie_scan: bad grid");
    const auto xs = Grid::logspace(0.05, 5.0, 40).points;
    const std::size_t total = static_cast<std::size_t>(count) * count;
    std::vector<ScanCell> cells(total);
    const auto work = [&](std::size_t idx) {
        const double a = step * static_cast<double>(idx / count + 1);
        const double b = step * static_cast<double>(idx % count + 1);
        const AlphaBeta ab(a, b);
        ScanCell c{a, b, classify(ab), kInf, -kInf, {}, false};
        for (double x : xs) {
            const double d = ml::d_func(ab, x);
            c.min_d = std::min(c.min_d, d);
            c.max_d = std::max(c.max_d, d);
        }
        switch (c.verdict.tag) {
            case Verdict::DCm: c.consistent = c.min_d >= -1e-10; break;
            case Verdict::DbarCm: c.consistent = -c.max_d >= -1e-10; break;
            case Verdict::ZeroFunction:
                c.consistent = c.min_d >= -1e-10 && c.max_d <= 1e-10;
                break;
            case Verdict::Neither:
            case Verdict::NeitherOpenRegion:
                c.witnesses = find_sign_witnesses(ab);
                c.consistent = c.witnesses.d.has_value() && c.witnesses.dbar.has_value();
                break;
        }
        cells[idx] = c;
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) work(i);
        });
    }
    for (auto& t : pool) t.join();
    return cells;
}

CheckResult compare(std::span<const double> xs, std::span<const double> lhs,
                    std::span<const double> rhs) {
    double top = 0.0;
    for (double r : rhs) top = std::max(top, std::fabs(r));
    CheckResult res;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double diff = std::fabs(lhs[i] - rhs[i]);
        const double e = top > 0.0 ? diff / std::max(std::fabs(rhs[i]), 1e-3 * top) : diff;
        if (!(e <= res.max_error)) {
            res.max_error = e;
            res.worst_x = xs[i];
        }
    }
    return res;
}

namespace {

template <class L, class R>
CheckResult compare_fns(const Grid& grid, L&& lhs, R&& rhs) {
    grid.validate();
    std::vector<double> l;
    std::vector<double> r;
    for (double x : grid.points) {
        l.push_back(lhs(x));
        r.push_back(rhs(x));
    }
    return compare(grid.points, l, r);
}

CheckResult worst(CheckResult a, const CheckResult& b) {
    return b.max_error > a.max_error ? b : a;
}

// The CM member of each exponential-term difference pair for the given alpha.
ThmB f_side(double a) { return a < 1.0 ? ThmB::TermMinusF : ThmB::FMinusTerm; }
ThmB lbf_side(double a) { return a < 1.0 ? ThmB::LbFMinusTerm : ThmB::TermMinusLbF; }

}  // namespace

CheckResult verify_identity(std::string_view name, double beta, const Grid& grid) {
    if (name == "D1beta") {
        const AlphaBeta ab(1.0, beta);
        return compare_fns(grid, [&](double x) { return ml::d_func(ab, x); }, [](double) { return 0.0; });
    }
    if (name == "ThmB_alpha1") {
        const AlphaBeta ab(1.0, beta);
        CheckResult r;
        for (ThmB w : {ThmB::FMinusTerm, ThmB::TermMinusF, ThmB::LbFMinusTerm, ThmB::TermMinusLbF}) {
            r = worst(r, compare_fns(grid, [&](double x) { return ml::thmb_diff(ab, x, w); },
                                     [](double) { return 0.0; }));
        }
        return r;
    }
    if (name == "Dhalf") {
        const AlphaBeta ab(0.5, beta);
        return compare_fns(grid, [&](double x) { return ml::d_func(ab, x); },
                           [&](double x) { return rgamma(beta - 0.5) / std::sqrt(x); });
    }
    if (name == "Dbar21") {
        return compare_fns(grid, [](double x) { return ml::dbar_func({2.0, 1.0}, x); },
                           [](double x) { return std::exp(-x); });
    }
    if (name == "Dbar41") {
        return compare_fns(grid, [](double x) { return ml::dbar_func({4.0, 1.0}, x); },
                           [](double x) { return 0.5 * (std::exp(-x) + std::cos(x) + std::sin(x)); });
    }
    if (name == "Ehalf") {
        const AlphaBeta ab(0.5, 1.0);
        return compare_fns(grid,
                           [&](double x) { return ml::ml(ab, -std::sqrt(x)) + ml::ml(ab, std::sqrt(x)); },
                           [](double x) { return 2.0 * std::exp(x); });
    }
    if (name == "E1beta_inc") {
        const AlphaBeta ab(1.0, beta);
        const auto rhs = [&](double x) { return ml::inc_term(ab, x); };
        return worst(compare_fns(grid, [&](double x) { return ml::ml(ab, x); }, rhs),
                     compare_fns(grid, [&](double x) { return ml::lb_big_f(ab, x); }, rhs));
    }
    throw ParameterError("verify_identity: unknown name " + std::string(name));
}

CheckResult verify_representation(std::string_view name, AlphaBeta ab, const Grid& grid,
                                  const QuadratureConfig& cfg) {
    grid.validate();
    const double a = ab.alpha;
    const auto& xs = grid.points;
    const auto side = [&](auto&& fn) {
        std::vector<double> v;
        for (double x : xs) v.push_back(fn(x));
        return v;
    };
    const auto scaled = [&](const DensitySpec& spec, auto&& factor) {
        auto v = laplace_quad(spec, xs, cfg);
        for (std::size_t i = 0; i < xs.size(); ++i) v[i] *= factor(xs[i]);
        return v;
    };
    const auto one = [](double) { return 1.0; };
    const auto thmb = [&](AlphaBeta p, ThmB w) {
        return side([&](double x) { return ml::thmb_diff(p, x, w); });
    };
    const AlphaBeta a1(a, 1.0);

    std::vector<double> lhs;
    std::vector<double> rhs;
    if (name == "b1") {
        lhs = side([&](double x) { return ml::d_func(a1, x); });
        rhs = laplace_quad(DensitySpec::f_alpha(a), xs, cfg);
    } else if (name == "b2") {
        lhs = side([&](double x) { return ml::dbar_func(a1, x); });
        rhs = laplace_quad(DensitySpec::t_alpha(a), xs, cfg);
    } else if (name == "Exa") {
        lhs = thmb(a1, ThmB::TermMinusF);
        rhs = laplace_quad(DensitySpec::exa(a), xs, cfg);
    } else if (name == "FHat") {
        lhs = thmb(a1, ThmB::LbFMinusTerm);
        rhs = laplace_quad(DensitySpec::f_hat(a), xs, cfg);
    } else if (name == "Eaxx") {
        lhs = thmb(a1, ThmB::FMinusTerm);
        rhs = laplace_quad(DensitySpec::eaxx(a), xs, cfg);
    } else if (name == "UPow") {
        lhs = thmb(a1, ThmB::FMinusTerm);
        rhs = scaled(DensitySpec::upow(a), [&](double) { return 1.0 - 1.0 / a; });
    } else if (name == "SizeBias") {
        lhs = thmb(a1, ThmB::TermMinusLbF);
        rhs = scaled(DensitySpec::upow_size_bias(a), [&](double) { return 1.0 / a; });
    } else if (name == "ThmB_F" || name == "ThmB_LbF") {
        const ThmB w = name == "ThmB_F" ? f_side(a) : lbf_side(a);
        lhs = thmb(ab, w);
        rhs = laplace_quad(bernstein::thmb_bernstein(ab, w), xs, cfg);
    } else if (name == "Bernstein") {
        const auto v = classify(ab);
        const double sign = v.tag == Verdict::DbarCm ? -1.0 : 1.0;
        if (v.tag != Verdict::DCm && v.tag != Verdict::DbarCm && v.tag != Verdict::ZeroFunction) {
            throw RegionError("verify_representation: no CM claim for this (alpha, beta)");
        }
        const auto spec = bernstein::compose_bernstein(ab);
        lhs = side([&](double x) { return sign * ml::d_func(ab, x); });
        rhs = laplace_quad(spec, xs, cfg);
    } else if (name == "Bracket") {
        lhs = side([&](double x) { return ml::dbar_func(ab, x); });
        rhs = scaled(DensitySpec::hankel_bracket(a, ab.beta),
                     [&](double x) { return std::pow(x, 1.0 - ab.beta) / kPi; });
    } else if (name == "Remark2Line1" || name == "Remark2Line3") {
        const AlphaBeta p(1.5, 1.5);
        lhs = side([&](double x) { return ml::dbar_func(p, x); });
        if (name == "Remark2Line1") {
            rhs = scaled(DensitySpec::remark2_line1(), [](double x) { return 1.0 / (kPi * std::sqrt(x)); });
        } else {
            rhs = scaled(DensitySpec::remark2_line3(), one);
        }
    } else {
        throw ParameterError("verify_representation: unknown name " + std::string(name));
    }
    return compare(xs, lhs, rhs);
}

const std::vector<std::string>& identity_names() {
    static const std::vector<std::string> names{"D1beta", "ThmB_alpha1", "Dhalf", "Dbar21",
                                                "Dbar41", "Ehalf", "E1beta_inc"};
    return names;
}

const std::vector<std::string>& representation_names() {
    static const std::vector<std::string> names{
        "b1",      "b2",       "Exa",       "FHat",    "Eaxx",         "UPow",        "SizeBias",
        "ThmB_F",  "ThmB_LbF", "Bernstein", "Bracket", "Remark2Line1", "Remark2Line3"};
    return names;
}

}  // namespace necktie::verify
