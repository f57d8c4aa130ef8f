#include "necktie/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>

#include "necktie/bernstein.hpp"
#include "necktie/error.hpp"
#include "necktie/mlcore.hpp"
#include "necktie/simd/kernels.hpp"
#include "necktie/specfun.hpp"
#include "necktie/verify.hpp"

namespace necktie::mc {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

// Uniform on the open interval (0, 1).
double uniform_open(rng::Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1p-53;
}

// log Z_a by Kanter's representation (A(U)/E)^((1-a)/a), U uniform on (0, pi).
double log_stable(double a, rng::Engine& eng) {
    if (a == 1.0) return 0.0;
    const double u = kPi * uniform_open(eng);
    const double e = rng::exponential(eng);
    const double log_a = a / (1.0 - a) * std::log(std::sin(a * u)) +
                         std::log(std::sin((1.0 - a) * u)) -
                         std::log(std::sin(u)) / (1.0 - a);
    return (1.0 - a) / a * (log_a - std::log(e));
}

double log_gamma_draw(double c, rng::Engine& eng) {
    return std::log(boost::random::gamma_distribution<double>(c, 1.0)(eng));
}

// log X_{p,q}: scale q^(q/p)/p times (prod Beta * prod Gamma)^(1/p).
double log_xrational(int p, int q, rng::Engine& eng) {
    double s = 0.0;
    for (int i = 2; i <= p; ++i) {
        const double a = static_cast<double>(i) / q;
        const double b = (i - 1) * (1.0 / p - 1.0 / q);
        s += std::log(boost::random::beta_distribution<double>(a, b)(eng));
    }
    for (int j = p + 1; j <= q; ++j) s += log_gamma_draw(static_cast<double>(j) / q, eng);
    return static_cast<double>(q) / p * std::log(static_cast<double>(q)) - std::log(static_cast<double>(p)) +
           s / p;
}

double draw_log(const SamplerSpec& spec, rng::Engine& eng) {
    const auto& p = spec.params;
    switch (spec.kind) {
        case SamplerKind::Stable: return log_stable(p[0], eng);
        case SamplerKind::Beta:
            return std::log(boost::random::beta_distribution<double>(p[0], p[1])(eng));
        case SamplerKind::Gamma: return log_gamma_draw(p[0], eng);
        case SamplerKind::UniformPow: return p[0] * std::log(rng::uniform_open0(eng));
        case SamplerKind::XRational:
            return log_xrational(static_cast<int>(p[0]), static_cast<int>(p[1]), eng);
        case SamplerKind::YAlpha: {
            const auto [pp, qq] = rational_alpha(p[0]);
            const double a = p[0];
            const double lz = log_stable(a, eng);
            const double lx = log_xrational(pp, qq, eng);
            return lz + lx + log_gamma_draw(1.0 / a, eng) / a;
        }
        case SamplerKind::RatioPow: {
            const double g = p[0];
            const double l1 = log_stable(g, eng);
            const double l2 = log_stable(g, eng);
            return g * (l1 - l2);
        }
        case SamplerKind::WAlpha: {
            const double a = p[0];
            const double l1 = log_stable((1.0 - a) / a, eng);
            const double l2 = log_stable(1.0 - a, eng);
            return (1.0 - a) * (l1 - l2);
        }
        case SamplerKind::ML: {
            const double a = p[0];
            const double ll = std::log(rng::exponential(eng));
            return ll / a + log_stable(a, eng);
        }
        case SamplerKind::MAlpha: return -p[0] * log_stable(p[0], eng);
    }
    return 0.0;
}

double draw(const SamplerSpec& spec, rng::Engine& eng) {
    const double v = std::exp(draw_log(spec, eng));
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw OutOfRangeError(std::string("sample: draw of ") + to_string(spec.kind) +
                              " not representable in double");
    }
    return v;
}

// Tabulated u -> int e^(-u t) g_alpha(t) dt, cubic B-spline in (log u, log Lg).
class LgTable {
public:
    explicit LgTable(double alpha) : alpha_(alpha) {
        std::vector<double> y;
        for (double l = kLogLo; l <= kLogHi + 0.5 * kStep; l += kStep) {
            y.push_back(std::log(bernstein::laplace_of_g(alpha, std::exp(l), false)));
        }
        spline_ = std::make_unique<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
            y.begin(), y.end(), kLogLo, kStep);
    }

    double operator()(double u) const {
        const double l = std::log(u);
        if (l < kLogLo || l > kLogHi) return bernstein::laplace_of_g(alpha_, u, false);
        return std::exp((*spline_)(l));
    }

private:
    static constexpr double kLogLo = -18.0;  // u ~ 1.5e-8
    static constexpr double kLogHi = 13.0;   // u ~ 4.4e5
    static constexpr double kStep = 0.01;
    double alpha_;
    std::unique_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
};

McRow make_row(double lambda, const Estimate& est, double rhs, const McParams& p) {
    McRow r{lambda, est.estimate, rhs, est.std_error, 0.0, false};
    const double diff = std::fabs(est.estimate - rhs);
    r.sigmas = est.std_error > 0.0 ? diff / est.std_error : (diff == 0.0 ? 0.0 : 1e300);
    r.pass = diff <= std::max(p.sigma_band * est.std_error, p.rel_floor * std::fabs(rhs));
    return r;
}

}  // namespace

const char* to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::Stable: return "Stable";
        case SamplerKind::Beta: return "Beta";
        case SamplerKind::Gamma: return "Gamma";
        case SamplerKind::UniformPow: return "UniformPow";
        case SamplerKind::XRational: return "XRational";
        case SamplerKind::YAlpha: return "YAlpha";
        case SamplerKind::RatioPow: return "RatioPow";
        case SamplerKind::WAlpha: return "WAlpha";
        case SamplerKind::ML: return "ML";
        case SamplerKind::MAlpha: return "MAlpha";
    }
    return "?";
}

std::pair<int, int> rational_alpha(double alpha) {
    for (int q = 1; q <= 12; ++q) {
        const long p = std::lround(alpha * q);
        if (p >= 1 && std::fabs(alpha - static_cast<double>(p) / q) <= 1e-12) {
            const int g = std::gcd(static_cast<int>(p), q);
            return {static_cast<int>(p) / g, q / g};
        }
    }
    throw ParameterError("rational_alpha: alpha must be p/q with q <= 12");
}

double xrational_mellin(int p, int q, double s) {
    require(p >= 1 && q > p, "xrational_mellin: needs 1 <= p < q");
    if (!(s > -static_cast<double>(p) / q)) throw DomainError("xrational_mellin: s <= -p/q");
    const double u = s / p;
    double l = s * (static_cast<double>(q) / p * std::log(static_cast<double>(q)) -
                    std::log(static_cast<double>(p)));
    for (int i = 2; i <= p; ++i) {
        const double a = static_cast<double>(i) / q;
        const double b = (i - 1) * (1.0 / p - 1.0 / q);
        l += std::lgamma(a + u) + std::lgamma(a + b) - std::lgamma(a) - std::lgamma(a + b + u);
    }
    for (int j = p + 1; j <= q; ++j) {
        const double c = static_cast<double>(j) / q;
        l += std::lgamma(c + u) - std::lgamma(c);
    }
    return std::exp(l);
}

void SamplerSpec::validate() const {
    const auto& p = params;
    const auto count = [&](std::size_t k) { require(p.size() == k, "SamplerSpec: wrong parameter count"); };
    const auto finite = [&] {
        for (double v : p) require(std::isfinite(v), "SamplerSpec: non-finite parameter");
    };
    switch (kind) {
        case SamplerKind::Stable:
        case SamplerKind::MAlpha:
            count(1), finite();
            require(p[0] > 0.0 && p[0] < 1.0, "SamplerSpec: alpha must lie in (0, 1)");
            break;
        case SamplerKind::Beta:
            count(2), finite();
            require(p[0] > 0.0 && p[1] > 0.0, "SamplerSpec: Beta needs a, b > 0");
            break;
        case SamplerKind::Gamma:
            count(1), finite();
            require(p[0] > 0.0, "SamplerSpec: Gamma needs c > 0");
            break;
        case SamplerKind::UniformPow:
            count(1), finite();
            require(p[0] > 0.0, "SamplerSpec: UniformPow needs p > 0");
            break;
        case SamplerKind::XRational:
            count(2), finite();
            require(p[0] == std::floor(p[0]) && p[1] == std::floor(p[1]) && p[0] >= 1.0 &&
                        p[1] > p[0] && p[1] <= 1000.0,
                    "SamplerSpec: XRational needs integers 1 <= p < q");
            break;
        case SamplerKind::YAlpha:
            count(1), finite();
            require(p[0] > 0.0 && p[0] < 1.0, "SamplerSpec: YAlpha needs alpha in (0, 1)");
            rational_alpha(p[0]);
            break;
        case SamplerKind::RatioPow:
            count(1), finite();
            require(p[0] > 0.0 && p[0] <= 1.0, "SamplerSpec: RatioPow needs gamma in (0, 1]");
            break;
        case SamplerKind::WAlpha:
            count(1), finite();
            require(p[0] >= 0.5 && p[0] < 1.0, "SamplerSpec: WAlpha needs alpha in [1/2, 1)");
            break;
        case SamplerKind::ML:
            count(1), finite();
            require(p[0] > 0.0 && p[0] <= 1.0, "SamplerSpec: ML needs alpha in (0, 1]");
            break;
    }
}

SampleBatch sample(const SamplerSpec& spec, std::size_t n, Seed seed) {
    spec.validate();
    require(n >= 1 && n <= 100000000, "sample: n must lie in [1, 1e8]");
    auto eng = rng::make_engine(seed);
    SampleBatch b;
    b.n = n;
    b.seed = seed;
    b.values.resize(n);
    for (auto& v : b.values) v = draw(spec, eng);
    return b;
}

Estimate empirical_laplace(const SampleBatch& batch, double lambda) {
    require(lambda >= 0.0 && std::isfinite(lambda), "empirical_laplace: lambda must be >= 0");
    require(!batch.values.empty(), "empirical_laplace: empty batch");
    const auto m = simd::exp_moments(batch.values, lambda);
    const double n = static_cast<double>(batch.values.size());
    const double mean = m.sum1 / n;
    const double var = std::max(m.sum2 / n - mean * mean, 0.0);
    return {mean, n > 1.0 ? std::sqrt(var / (n - 1.0)) : 0.0};
}

Estimate mean_estimate(std::span<const double> terms) {
    require(!terms.empty(), "mean_estimate: empty");
    const double n = static_cast<double>(terms.size());
    double mean = 0.0;
    for (double t : terms) mean += t;
    mean /= n;
    double ss = 0.0;
    for (double t : terms) ss += (t - mean) * (t - mean);
    return {mean, n > 1.0 ? std::sqrt(ss / (n - 1.0) / n) : 0.0};
}

bool McReport::passed() const {
    for (const auto& r : rows) {
        if (!r.pass) return false;
    }
    return !rows.empty();
}

McReport mc_verify(std::string_view name, const McParams& prm, std::size_t n, Seed seed,
                   std::span<const double> lambdas) {
    require(n >= 2 && n <= 100000000, "mc_verify: n must lie in [2, 1e8]");
    for (double l : lambdas) require(l > 0.0 && std::isfinite(l), "mc_verify: lambdas must be > 0");
    const double a = prm.alpha;
    const double as = a + prm.sampler_shift;
    McReport rep;
    rep.name = std::string(name);
    auto eng = rng::make_engine(seed);

    // Laplace transform of a plain batch against rhs(lambda).
    const auto plain = [&](const SamplerSpec& spec, auto&& rhs) {
        const auto batch = sample(spec, n, seed);
        for (double l : lambdas) rep.rows.push_back(make_row(l, empirical_laplace(batch, l), rhs(l), prm));
    };
    // Weighted terms f(lambda, draw) against rhs(lambda).
    std::vector<double> terms(n);
    const auto weighted = [&](auto&& drawer, auto&& term, auto&& rhs) {
        using Draw = decltype(drawer());
        std::vector<Draw> draws(n);
        for (auto& d : draws) d = drawer();
        for (double l : lambdas) {
            for (std::size_t i = 0; i < n; ++i) terms[i] = term(l, draws[i]);
            rep.rows.push_back(make_row(l, mean_estimate(terms), rhs(l), prm));
        }
    };

    if (name == "StableLT") {
        plain({SamplerKind::Stable, {as}}, [&](double l) { return std::exp(-std::pow(l, a)); });
    } else if (name == "MLLT") {
        plain({SamplerKind::ML, {as}}, [&](double l) { return 1.0 / (1.0 + std::pow(l, a)); });
    } else if (name == "Pollard") {
        plain({SamplerKind::MAlpha, {as}}, [&](double l) { return ml::ml({a, 1.0}, -l); });
    } else if (name == "SizeBias") {
        const auto batch = sample({SamplerKind::MAlpha, {as}}, n, seed);
        weighted([&, i = std::size_t{0}]() mutable { return batch.values[i++]; },
                 [&](double l, double m) { return a * m * std::exp(-l * m); },
                 [&](double l) { return ml::ml({a, a}, -l); });
    } else if (name == "MABFactor") {
        // M~ is Z^-a size-biased by Z^-a, with E Z^-a = 1/Gamma(1+a).
        require(as > 0.0 && as < 1.0, "MABFactor: alpha must lie in (0, 1)");
        const SamplerSpec bspec{SamplerKind::Beta, {as, 1.0 - as}};
        const double g = std::tgamma(1.0 + as);
        struct D { double b, m; };
        weighted([&] { return D{draw(bspec, eng), std::exp(-as * log_stable(as, eng))}; },
                 [&](double l, D d) { return g * d.m * std::exp(-l * std::pow(d.b, as) * d.m); },
                 [&](double l) { return ml::ml({a, 1.0}, -l); });
    } else if (name == "ML2LT" || name == "Sabb" || name == "Eaxx") {
        // V = U_{a-1}^(1/a), U_{a-1} = RatioPow(a-1).
        require(as > 1.0 && as <= 2.0, "alpha must lie in (1, 2]");
        const SamplerSpec u{SamplerKind::RatioPow, {as - 1.0}};
        const double w = (as - 1.0) / as;
        if (name == "ML2LT") {
            // Density Dbar_{a,1}: X = L / T', T' the law of T size-biased by 1/T.
            struct D { double v, l; };
            weighted([&] { return D{std::pow(draw(u, eng), 1.0 / as), rng::exponential(eng)}; },
                     [&](double l, D d) { return w * (1.0 + 1.0 / d.v) * std::exp(-l * d.l / d.v); },
                     [&](double l) {
                         return -verify::closed_laplace(verify::ClosedLaplace::DAlpha1, a, l);
                     });
        } else if (name == "Sabb") {
            require(prm.beta > 1.0, "Sabb: beta must exceed 1");
            const SamplerSpec bspec{SamplerKind::Beta, {1.0, prm.beta - 1.0}};
            const double rg = specfun::rgamma(prm.beta);
            struct D { double v, b; };
            weighted([&] { return D{std::pow(draw(u, eng), 1.0 / as), draw(bspec, eng)}; },
                     [&](double l, D d) { return rg * w * (1.0 + d.v) * std::exp(-l * d.b * d.v); },
                     [&](double l) { return ml::dbar_func({a, prm.beta}, l); });
        } else {
            require(as < 2.0, "Eaxx: alpha must lie in (1, 2)");
            weighted([&] { return std::pow(draw(u, eng), 1.0 / as); },
                     [&](double l, double v) { return w * std::exp(-l * v); },
                     [&](double l) { return ml::thmb_diff({a, 1.0}, l, ml::ThmB::FMinusTerm); });
        }
    } else if (name == "Exx") {
        require(as > 0.0 && as < 1.0, "Exx: alpha must lie in (0, 1)");
        const SamplerSpec u{SamplerKind::RatioPow, {1.0 - as}};
        weighted([&] { return std::pow(draw(u, eng), 1.0 / as); },
                 [&](double l, double v) { return (1.0 / as - 1.0) * std::exp(-l * v); },
                 [&](double l) { return ml::thmb_diff({a, 1.0}, l, ml::ThmB::TermMinusF); });
    } else if (name == "Prop1") {
        const SamplerSpec wspec{SamplerKind::WAlpha, {as}};
        wspec.validate();
        weighted([&] { return draw(wspec, eng); },
                 [&](double l, double v) { return (1.0 / as - 1.0) * std::exp(-l * v); },
                 [&](double l) {
                     return ml::thmb_diff({a, 1.0}, std::pow(l, 1.0 / a), ml::ThmB::TermMinusF);
                 });
    } else if (name == "XMean") {
        const auto [p, q] = rational_alpha(as);
        const auto batch = sample({SamplerKind::XRational, {double(p), double(q)}}, n, seed);
        // E X_a = Gamma(1 + 1/a) / a at s = 1.
        rep.rows.push_back(make_row(1.0, mean_estimate(batch.values), std::tgamma(1.0 + 1.0 / a) / a, prm));
    } else if (name == "Factor_daa") {
        require(a > 0.5 && a < 1.0, "Factor_daa: alpha must lie in (1/2, 1)");
        const LgTable lg(a);
        const auto batch = sample({SamplerKind::YAlpha, {as}}, n, seed);
        const double rg = specfun::rgamma(a);
        weighted([&, i = std::size_t{0}]() mutable { return batch.values[i++]; },
                 [&](double l, double y) { return rg * lg(l * y); },
                 [&](double l) { return ml::d_func({a, a}, l); });
    } else {
        throw ParameterError("mc_verify: unknown name " + std::string(name));
    }
    return rep;
}

const std::vector<std::string>& mc_names() {
    static const std::vector<std::string> names{"StableLT", "MLLT",  "ML2LT", "Pollard",
                                                "SizeBias", "MABFactor", "Sabb", "Exx",
                                                "Eaxx",     "Prop1", "XMean", "Factor_daa"};
    return names;
}

}  // namespace necktie::mc
