#include "necktie/bernstein.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "necktie/error.hpp"
#include "necktie/specfun.hpp"

namespace necktie::bernstein {

namespace {

using specfun::cospi;
using specfun::rgamma;
using specfun::sinpi;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// a == b up to a few ulps; parameters arrive from grids such as 1 - 0.9.
bool near(double a, double b) {
    return std::fabs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                   std::max({1.0, std::fabs(a), std::fabs(b)});
}
bool geq(double a, double b) { return a >= b || near(a, b); }
bool leq(double a, double b) { return a <= b || near(a, b); }

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

bool reciprocal_integer(double alpha) {
    const int n = ml::n_alpha(alpha);
    return near(alpha * n, 1.0);
}

// t^p / Q(t) with Q = (t^a - cos pi a)^2 + sin^2 pi a. For t > 1 the
// numerator and Q are both divided by t^(2a) so nothing overflows.
double pow_over_q(double alpha, double p, double t) {
    const double c = cospi(alpha);
    const double s = sinpi(alpha);
    if (t <= 1.0) {
        const double ta = std::pow(t, alpha);
        const double d = (ta - c) * (ta - c) + s * s;
        return std::pow(t, p) / d;
    }
    const double w = std::pow(t, -alpha);
    const double d = (1.0 - c * w) * (1.0 - c * w) + (s * w) * (s * w);
    return std::pow(t, p - 2.0 * alpha) / d;
}

// t^p / Q(t)^2, same scaling.
double pow_over_q2(double alpha, double p, double t) {
    const double c = cospi(alpha);
    const double s = sinpi(alpha);
    if (t <= 1.0) {
        const double ta = std::pow(t, alpha);
        const double d = (ta - c) * (ta - c) + s * s;
        return std::pow(t, p) / (d * d);
    }
    const double w = std::pow(t, -alpha);
    const double d = (1.0 - c * w) * (1.0 - c * w) + (s * w) * (s * w);
    return std::pow(t, p - 4.0 * alpha) / (d * d);
}

// The six (coefficient, exponent) pairs of htilde.
struct Term {
    double coef;
    double expo;
};

std::array<Term, 6> htilde_terms(double a, double b) {
    const double c = cospi(a);
    return {{{1.0 - a - b, 3.0 * a},
             {-2.0 * (1.0 - b) * c, 2.0 * a},
             {1.0 + a - b, a},
             {-(a + b), 3.0 * a - 1.0},
             {2.0 * b * c, 2.0 * a - 1.0},
             {a - b, a - 1.0}}};
}

std::array<Term, 4> bracket_terms(double a, double b) {
    const double sb = sinpi(b);
    return {{{sb, 2.0 * a - b},
             {-sb, 1.0 - b},
             {sinpi(a + b), a + 1.0 - b},
             {sinpi(a - b), a - b}}};
}

double beta_density(double a, double b, double t) {
    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - lbeta);
}

double gamma_density(double c, double t) {
    return std::exp((c - 1.0) * std::log(t) - t - std::lgamma(c));
}

// sin(pi s (1-a)/a) / (a sin(pi s / a)): the Mellin transform of
// sin(pi a) t^(a-1) / (pi Q), valid on (-a, a) for a in (0, 2).
double exa_mellin(double a, double s) {
    if (s == 0.0) return (1.0 - a) / a;
    return sinpi(s * (1.0 - a) / a) / (a * sinpi(s / a));
}

double closed_m(double a, double s) {
    if (s == 0.0) return -1.0;
    return -sinpi(1.0 / a) * sinpi(s) / (a * sinpi(s / a) * sinpi((s + 1.0) / a));
}

DensitySpec make(Kind k, std::vector<double> params, Support sup, Normalization norm) {
    DensitySpec d;
    d.kind = k;
    d.params = std::move(params);
    d.support = sup;
    d.normalization = norm;
    return d;
}

constexpr Support kHalfLine{0.0, kInf};

void require_open_unit(double a, const char* what) { require(a > 0.0 && a < 1.0, what); }
void require_one_two(double a, const char* what) { require(a > 1.0 && a < 2.0, what); }

}  // namespace

// ---------------------------------------------------------------- factories

DensitySpec DensitySpec::f_alpha(double a) {
    require_open_unit(a, "FAlpha: alpha must lie in (0, 1)");
    return make(Kind::FAlpha, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::f_hat(double a) {
    require_open_unit(a, "FHat: alpha must lie in (0, 1)");
    return make(Kind::FHat, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::exa(double a) {
    require_open_unit(a, "ExaDensity: alpha must lie in (0, 1)");
    return make(Kind::ExaDensity, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::t_alpha(double a) {
    if (a == 2.0) return point_mass(1.0);
    require_one_two(a, "TAlpha: alpha must lie in (1, 2]");
    return make(Kind::TAlpha, {a}, kHalfLine, Normalization::Probability);
}

DensitySpec DensitySpec::eaxx(double a) {
    require_one_two(a, "EaxxDensity: alpha must lie in (1, 2)");
    return make(Kind::EaxxDensity, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::upow(double a) {
    require_one_two(a, "UPowDensity: alpha must lie in (1, 2)");
    return make(Kind::UPowDensity, {a}, kHalfLine, Normalization::Probability);
}

DensitySpec DensitySpec::upow_size_bias(double a) {
    require_one_two(a, "UPowSizeBias: alpha must lie in (1, 2)");
    return make(Kind::UPowSizeBias, {a}, kHalfLine, Normalization::Probability);
}

DensitySpec DensitySpec::tilde_f_alpha(double a) {
    require(a > 0.0 && a < 0.5, "TildeFAlpha: alpha must lie in (0, 1/2)");
    return make(Kind::TildeFAlpha, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::h_alpha_beta(double a, double b) {
    require_open_unit(a, "HAlphaBeta: alpha must lie in (0, 1)");
    require(b > 0.0 && std::isfinite(b), "HAlphaBeta: beta must be positive");
    const bool nonneg = leq(b, std::min(a, 1.0 - a));
    return make(Kind::HAlphaBeta, {a, b}, kHalfLine,
                nonneg ? Normalization::SigmaFinite : Normalization::Signed);
}

DensitySpec DensitySpec::hankel_bracket(double a, double b) {
    require(a > 0.0 && a < 2.0 && b > 0.0 && b < 2.0,
            "HankelBracket: alpha and beta must lie in (0, 2)");
    return make(Kind::HankelBracket, {a, b}, kHalfLine, Normalization::Signed);
}

DensitySpec DensitySpec::g_alpha(double a) {
    require(a > 0.5 && a < 1.0, "GAlpha: alpha must lie in (1/2, 1)");
    return make(Kind::GAlpha, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::tilde_g_alpha(double a) {
    require(a > 0.0 && a < 0.5 && !reciprocal_integer(a),
            "TildeGAlpha: alpha must lie in (0, 1/2) and not be 1/n");
    return make(Kind::TildeGAlpha, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::remark2_line1() {
    return make(Kind::Remark2Line1, {}, kHalfLine, Normalization::Signed);
}

DensitySpec DensitySpec::remark2_line3() {
    return make(Kind::Remark2Line3, {}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::monomial_sum(std::vector<double> coeffs, std::vector<double> exponents) {
    require(coeffs.size() == exponents.size(), "MonomialSum: size mismatch");
    std::vector<double> p;
    bool nonneg = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        require(std::isfinite(coeffs[i]) && std::isfinite(exponents[i]),
                "MonomialSum: non-finite entry");
        p.push_back(coeffs[i]);
        p.push_back(exponents[i]);
        nonneg = nonneg && coeffs[i] >= 0.0;
    }
    return make(Kind::MonomialSum, std::move(p), kHalfLine,
                nonneg ? Normalization::SigmaFinite : Normalization::Signed);
}

DensitySpec DensitySpec::beta_kernel(double a, double b) {
    require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
            "BetaKernel: a and b must be positive");
    return make(Kind::BetaKernel, {a, b}, {0.0, 1.0}, Normalization::Probability);
}

DensitySpec DensitySpec::gamma_kernel(double c) {
    require(c > 0.0 && std::isfinite(c), "GammaKernel: shape must be positive");
    return make(Kind::GammaKernel, {c}, kHalfLine, Normalization::Probability);
}

DensitySpec DensitySpec::stable(double a) {
    require_open_unit(a, "StableDensity: alpha must lie in (0, 1)");
    return make(Kind::StableDensity, {a}, kHalfLine, Normalization::Probability);
}

DensitySpec DensitySpec::factorized_h(double a) {
    require(a > 0.5 && a < 1.0, "FactorizedH: alpha must lie in (1/2, 1)");
    return make(Kind::FactorizedH, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::factorized_h_tilde(double a) {
    require(a > 0.0 && a < 0.5 && !reciprocal_integer(a),
            "FactorizedHTilde: alpha must lie in (0, 1/2) and not be 1/n");
    return make(Kind::FactorizedHTilde, {a}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::point_mass(double at) {
    require(at > 0.0 && std::isfinite(at), "PointMass: location must be positive");
    return make(Kind::PointMass, {at}, {at, at}, Normalization::Probability);
}

DensitySpec DensitySpec::zero() {
    return make(Kind::Zero, {}, kHalfLine, Normalization::SigmaFinite);
}

DensitySpec DensitySpec::composite(std::vector<DensitySpec> factors, double prefactor) {
    require(!factors.empty(), "Composite: needs at least one factor");
    require(std::isfinite(prefactor), "Composite: prefactor must be finite");
    bool nonneg = prefactor >= 0.0;
    bool prob = prefactor == 1.0;
    Support sup{1.0, 1.0};
    for (const auto& f : factors) {
        nonneg = nonneg && f.normalization != Normalization::Signed;
        prob = prob && f.normalization == Normalization::Probability;
        sup.lo *= f.support.lo;
        sup.hi *= f.support.hi;
    }
    DensitySpec d = make(Kind::Composite, {}, sup,
                         prob     ? Normalization::Probability
                         : nonneg ? Normalization::SigmaFinite
                                  : Normalization::Signed);
    d.prefactor = prefactor;
    d.factors = std::move(factors);
    return d;
}

DensitySpec DensitySpec::sum(std::vector<DensitySpec> terms, double prefactor) {
    require(!terms.empty(), "Sum: needs at least one term");
    bool nonneg = prefactor >= 0.0;
    for (const auto& f : terms) nonneg = nonneg && f.normalization != Normalization::Signed;
    DensitySpec d = make(Kind::Sum, {}, kHalfLine,
                         nonneg ? Normalization::SigmaFinite : Normalization::Signed);
    d.prefactor = prefactor;
    d.factors = std::move(terms);
    return d;
}

bool DensitySpec::pointwise() const {
    switch (kind) {
        case Kind::FactorizedH:
        case Kind::FactorizedHTilde:
        case Kind::PointMass:
            return false;
        case Kind::Composite: {
            bool any_density = false;
            for (const auto& f : factors) {
                if (f.kind == Kind::PointMass) continue;
                if (!f.pointwise()) return false;
                any_density = true;
            }
            return any_density;
        }
        case Kind::Sum:
            return std::all_of(factors.begin(), factors.end(),
                               [](const DensitySpec& f) { return f.pointwise(); });
        default:
            return true;
    }
}

const char* to_string(Kind kind) {
    switch (kind) {
        case Kind::FAlpha: return "FAlpha";
        case Kind::FHat: return "FHat";
        case Kind::ExaDensity: return "ExaDensity";
        case Kind::TAlpha: return "TAlpha";
        case Kind::EaxxDensity: return "EaxxDensity";
        case Kind::UPowDensity: return "UPowDensity";
        case Kind::UPowSizeBias: return "UPowSizeBias";
        case Kind::TildeFAlpha: return "TildeFAlpha";
        case Kind::HAlphaBeta: return "HAlphaBeta";
        case Kind::HankelBracket: return "HankelBracket";
        case Kind::GAlpha: return "GAlpha";
        case Kind::TildeGAlpha: return "TildeGAlpha";
        case Kind::Remark2Line1: return "Remark2Line1";
        case Kind::Remark2Line3: return "Remark2Line3";
        case Kind::MonomialSum: return "MonomialSum";
        case Kind::BetaKernel: return "BetaKernel";
        case Kind::GammaKernel: return "GammaKernel";
        case Kind::StableDensity: return "StableDensity";
        case Kind::FactorizedH: return "FactorizedH";
        case Kind::FactorizedHTilde: return "FactorizedHTilde";
        case Kind::PointMass: return "PointMass";
        case Kind::Zero: return "Zero";
        case Kind::Composite: return "Composite";
        case Kind::Sum: return "Sum";
    }
    return "?";
}

std::string DensitySpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (kind == Kind::Composite || kind == Kind::Sum) {
        if (prefactor != 1.0) os << prefactor << "*";
        os << "(";
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << (kind == Kind::Composite ? " (.) " : " + ");
            os << factors[i].describe();
        }
        os << ")";
        return os.str();
    }
    os << to_string(kind);
    if (!params.empty()) {
        os << "(";
        for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------- pointwise

double denominator(double alpha, double t) {
    const double ta = std::pow(t, alpha);
    const double c = cospi(alpha);
    const double s = sinpi(alpha);
    return (ta - c) * (ta - c) + s * s;
}

double f_alpha_prime(double a, double t) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("f_alpha_prime: alpha must lie in (0, 1)");
    if (!(t > 0.0)) throw DomainError("f_alpha_prime: requires t > 0");
    const double k = sinpi(a) / kPi;
    const double f = k * (pow_over_q(a, a - 1.0, t) + pow_over_q(a, a, t));
    // f'/f = (a-1)/t + 1/(1+t) - Q'/Q with Q' = 2a t^(a-1)(t^a - c).
    const double c = cospi(a);
    double dq;
    if (t <= 1.0) {
        const double ta = std::pow(t, a);
        dq = 2.0 * a * (ta - c) * ta / (t * denominator(a, t));
    } else {
        const double w = std::pow(t, -a);
        const double s = sinpi(a);
        const double d = (1.0 - c * w) * (1.0 - c * w) + (s * w) * (s * w);
        dq = 2.0 * a * (1.0 - c * w) / (t * d);
    }
    return f * ((a - 1.0) / t + 1.0 / (1.0 + t) - dq);
}

double htilde_poly(double a, double b, double t) {
    if (!(t > 0.0)) throw DomainError("htilde_poly: requires t > 0");
    double s = 0.0;
    for (const auto& term : htilde_terms(a, b)) {
        if (term.coef != 0.0) s += term.coef * std::pow(t, term.expo);
    }
    return s;
}

double stable_density(double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("stable_density: alpha must lie in (0, 1)");
    }
    if (!(x > 0.0)) throw DomainError("stable_density: requires x > 0");
    const double lx = std::log(x);
    if (-alpha * lx <= std::log(0.05)) {
        // Far tail: (1/pi) sum_k (-1)^(k+1) Gamma(a k + 1) sin(pi a k) x^(-a k - 1) / k!,
        // whose terms shrink at least like 0.05^k here.
        double sum = 0.0;
        for (int k = 1; k < 400; ++k) {
            const double mag = std::exp(std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) -
                                        (alpha * k + 1.0) * lx);
            const double term = (k % 2 ? 1.0 : -1.0) * mag * sinpi(alpha * k);
            sum += term;
            if (mag <= 1e-17 * std::fabs(sum)) break;
        }
        return sum / kPi;
    }
    const double r = alpha / (1.0 - alpha);
    const double lc = -r * lx;  // log of x^(-alpha/(1-alpha))
    // A(u) = (sin(a u)/sin u)^(1/(1-a)) sin((1-a)u)/sin(a u) increases from
    // a^(a/(1-a))(1-a) at 0 to infinity at pi. The integrand A c exp(-A c)
    // peaks where A c = 1 and can be very narrow there, so the range is
    // split at the peak. The piece ending at pi is written in v = pi - u so
    // the blow-up of A sits at v = 0, where quadrature nodes are exact.
    auto log_a = [alpha](double sa, double s, double s1) {
        return std::log(sa / s) / (1.0 - alpha) + std::log(s1 / sa);
    };
    auto level = [&](double u) {
        return log_a(std::sin(alpha * u), std::sin(u), std::sin((1.0 - alpha) * u)) + lc;
    };
    auto weight = [](double l) {
        if (l > 6.6) return 0.0;
        const double ac = std::exp(l);
        return ac * std::exp(-ac);
    };
    auto from_zero = [&](double u) { return weight(level(u)); };
    auto from_pi = [&](double v) {
        return weight(log_a(std::sin(alpha * (kPi - v)), std::sin(v),
                            std::sin((1.0 - alpha) * (kPi - v))) +
                      lc);
    };
    double split = kPi / 2.0;
    if (level(1e-300) >= 0.0) {
        split = std::min(split, 1e-3);
    } else {
        double lo = 0.0;
        double hi = kPi;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (level(mid) < 0.0 ? lo : hi) = mid;
        }
        split = 0.5 * (lo + hi);
    }
    quadrature::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    opt.max_level = 12;
    // Each piece is judged against the total: one of them may be negligible.
    double value = 0.0;
    double error = 0.0;
    auto piece = [&](const quadrature::Integrand& f, double a, double b) {
        if (!(b > a)) return;
        try {
            const auto res = quadrature::finite(f, a, b, opt);
            value += res.value;
            error += res.error;
        } catch (const ConvergenceError& e) {
            value += e.estimate();
            error += e.error();
        }
    };
    // u-form on (0, pi/2), v-form beyond, each further split at the peak.
    if (split <= kPi / 2.0) {
        piece(from_zero, 0.0, split);
        piece(from_zero, split, kPi / 2.0);
        piece(from_pi, 0.0, kPi / 2.0);
    } else {
        piece(from_zero, 0.0, kPi / 2.0);
        piece(from_pi, kPi - split, kPi / 2.0);
        piece(from_pi, 0.0, kPi - split);
    }
    if (!(error <= 1e-10 * value) && value > 1e-280) {
        throw ConvergenceError("stable_density: tolerance not reached", value, error);
    }
    const double integral = value;
    return r * integral / (kPi * x);
}

double density_eval(const DensitySpec& spec, double t) {
    if (!(t > 0.0) || !(t <= spec.support.hi) || !std::isfinite(t)) {
        throw DomainError(std::string("density_eval: t outside the support of ") +
                          to_string(spec.kind));
    }
    const auto& p = spec.params;
    switch (spec.kind) {
        case Kind::FAlpha: {
            const double a = p[0];
            return sinpi(a) / kPi * (pow_over_q(a, a - 1.0, t) + pow_over_q(a, a, t));
        }
        case Kind::FHat:
            return sinpi(p[0]) / kPi * pow_over_q(p[0], p[0], t);
        case Kind::ExaDensity:
            return sinpi(p[0]) / kPi * pow_over_q(p[0], p[0] - 1.0, t);
        case Kind::TAlpha: {
            const double a = p[0];
            return -sinpi(a) / kPi * (pow_over_q(a, a - 1.0, t) + pow_over_q(a, a, t));
        }
        case Kind::EaxxDensity:
            return -sinpi(p[0]) / kPi * pow_over_q(p[0], p[0] - 1.0, t);
        case Kind::UPowDensity: {
            const double a = p[0];
            return -a * sinpi(a) / (kPi * (a - 1.0)) * pow_over_q(a, a - 1.0, t);
        }
        case Kind::UPowSizeBias: {
            const double a = p[0];
            return -a * sinpi(a) / kPi * pow_over_q(a, a, t);
        }
        case Kind::TildeFAlpha: {
            const double a = p[0];
            if (reciprocal_integer(a)) return 0.0;
            const int n = ml::n_alpha(a);
            const double c = cospi(a);
            const double v = pow_over_q(a, a - 1.0, t) -
                             specfun::chebyshev_u(n - 2, c) * pow_over_q(a, -a * (n - 1), t) +
                             specfun::chebyshev_u(n - 1, c) * pow_over_q(a, -a * (n - 2), t);
            return sinpi(a) / kPi * v;
        }
        case Kind::HAlphaBeta: {
            const double a = p[0];
            double s = 0.0;
            for (const auto& term : htilde_terms(a, p[1])) {
                if (term.coef != 0.0) s += term.coef * pow_over_q2(a, term.expo, t);
            }
            return sinpi(a) / kPi * s;
        }
        case Kind::HankelBracket: {
            double s = 0.0;
            for (const auto& term : bracket_terms(p[0], p[1])) {
                if (term.coef != 0.0) s += term.coef * pow_over_q(p[0], term.expo, t);
            }
            return s;
        }
        case Kind::GAlpha: {
            const double a = p[0];
            const double w = std::pow(t, -a);
            return (1.0 - a) * w * std::exp(-w) * rgamma(2.0 - 1.0 / a);
        }
        case Kind::TildeGAlpha: {
            const double a = p[0];
            const int n = ml::n_alpha(a);
            const double w = std::pow(t, -a);
            return (1.0 - n * a) * std::exp(n * std::log(w) - w) * rgamma(n + 1.0 - 1.0 / a);
        }
        case Kind::Remark2Line1: {
            if (t <= 1.0) return (1.0 - t * t) / (std::sqrt(t) * (t * t * t + 1.0));
            const double u = 1.0 / t;
            return (u * u * u - u) / ((1.0 + u * u * u) * std::sqrt(t));
        }
        case Kind::Remark2Line3: {
            // Re sqrt(a + i b), a = 1/2 - t, b = sqrt(3)/2; |a + i b| = q.
            const double a = 0.5 - t;
            const double b = std::sqrt(3.0) / 2.0;
            const double q = t <= 1.0 ? std::sqrt(t * t - t + 1.0)
                                      : t * std::sqrt(1.0 - 1.0 / t + 1.0 / (t * t));
            const double re = a >= 0.0 ? std::sqrt((q + a) / 2.0) : b / std::sqrt(2.0 * (q - a));
            return 2.0 / std::sqrt(3.0 * kPi) * re / q;
        }
        case Kind::MonomialSum: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < p.size(); i += 2) s += p[i] * std::pow(t, -p[i + 1]);
            return s;
        }
        case Kind::BetaKernel:
            if (t >= 1.0) throw DomainError("density_eval: BetaKernel requires t < 1");
            return beta_density(p[0], p[1], t);
        case Kind::GammaKernel:
            return gamma_density(p[0], t);
        case Kind::StableDensity:
            return stable_density(p[0], t);
        case Kind::Zero:
            return 0.0;
        case Kind::FactorizedH:
        case Kind::FactorizedHTilde:
        case Kind::PointMass:
            throw DomainError(std::string("density_eval: ") + to_string(spec.kind) +
                              " has no pointwise density");
        case Kind::Composite: {
            if (!spec.pointwise()) throw DomainError("density_eval: composite is not pointwise");
            quadrature::Options opt;
            opt.rel_tol = 1e-10;
            opt.abs_tol = 1e-300;
            if (spec.factors.size() == 1) return spec.prefactor * density_eval(spec.factors[0], t);
            DensitySpec rest = spec.factors.size() == 2
                                   ? spec.factors[1]
                                   : DensitySpec::composite(
                                         {spec.factors.begin() + 1, spec.factors.end()}, 1.0);
            return spec.prefactor * mconv(spec.factors[0], rest, t, opt);
        }
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& f : spec.factors) s += density_eval(f, t);
            return spec.prefactor * s;
        }
    }
    throw DomainError("density_eval: unknown kind");
}

// ---------------------------------------------------------------- polynomial checks

PolyMin poly_nonneg(double a, double b) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("poly_nonneg: alpha must lie in (0, 1)");
    constexpr int kPoints = 4096;
    const double lo = std::log(1e-6);
    const double hi = std::log(1e6);
    const double step = (hi - lo) / (kPoints - 1);
    PolyMin best{kInf, 0.0};
    int best_i = 0;
    for (int i = 0; i < kPoints; ++i) {
        const double t = std::exp(lo + step * i);
        const double v = htilde_poly(a, b, t);
        if (v < best.min_value) {
            best = {v, t};
            best_i = i;
        }
    }
    // Golden section in log t over the neighbouring grid cells.
    double l = lo + step * std::max(best_i - 1, 0);
    double r = lo + step * std::min(best_i + 1, kPoints - 1);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double u) { return htilde_poly(a, b, std::exp(u)); };
    double x1 = r - g * (r - l);
    double x2 = l + g * (r - l);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 100 && r - l > 1e-14; ++it) {
        if (f1 < f2) {
            r = x2;
            x2 = x1;
            f2 = f1;
            x1 = r - g * (r - l);
            f1 = f(x1);
        } else {
            l = x1;
            x1 = x2;
            f1 = f2;
            x2 = l + g * (r - l);
            f2 = f(x2);
        }
    }
    const double um = 0.5 * (l + r);
    const double vm = f(um);
    if (vm < best.min_value) best = {vm, std::exp(um)};
    return best;
}

ThresholdReport lemma_threshold(double a, double b, double c, double rho) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0 && rho > 0.0)) {
        throw DomainError("lemma_threshold: all arguments must be positive");
    }
    ThresholdReport r{};
    r.threshold = std::pow(rho / c, rho) * std::pow(b / (1.0 + rho), 1.0 + rho);
    r.holds = a >= r.threshold;
    // The minimiser is t* = (b / (a (1+rho)))^(1/rho); scan two decades around it.
    const double ts = std::pow(b / (a * (1.0 + rho)), 1.0 / rho);
    r.grid_min = kInf;
    constexpr int kPoints = 20001;
    for (int i = 0; i < kPoints; ++i) {
        const double t = ts * std::pow(10.0, -2.0 + 4.0 * i / (kPoints - 1));
        const double v = a * std::pow(t, 1.0 + rho) - b * t + c;
        if (v < r.grid_min) {
            r.grid_min = v;
            r.grid_argmin = t;
        }
    }
    return r;
}

// ---------------------------------------------------------------- Mellin

double mellin_closed(double alpha, double s, bool tilde) {
    if (!tilde) {
        if (!(alpha > 0.5 && alpha < 1.0)) {
            throw ParameterError("mellin_closed: plain form requires alpha in (1/2, 1)");
        }
        if (!(s > -alpha && s < alpha - 1.0)) {
            throw StripError("mellin_closed: s outside (-alpha, alpha - 1)");
        }
        return closed_m(alpha, s);
    }
    if (!(alpha > 0.0 && alpha <= 0.5)) {
        throw ParameterError("mellin_closed: tilde form requires alpha in (0, 1/2]");
    }
    const int n = ml::n_alpha(alpha);
    if (!(s > -alpha && s < n * alpha - 1.0)) {
        throw StripError("mellin_closed: s outside (-alpha, n alpha - 1)");
    }
    if (reciprocal_integer(alpha)) return 0.0;
    return closed_m(alpha, s);
}

MellinStrip mellin_strip(const DensitySpec& spec) {
    const auto& p = spec.params;
    switch (spec.kind) {
        case Kind::FAlpha:
        case Kind::TAlpha:
        case Kind::HAlphaBeta:
        case Kind::FactorizedH:
            return {-p[0], p[0] - 1.0};
        case Kind::FHat:
        case Kind::UPowSizeBias:
            return {-p[0] - 1.0, p[0] - 1.0};
        case Kind::ExaDensity:
        case Kind::EaxxDensity:
        case Kind::UPowDensity:
            return {-p[0], p[0]};
        case Kind::TildeFAlpha:
        case Kind::FactorizedHTilde:
            return {-p[0], ml::n_alpha(p[0]) * p[0] - 1.0};
        case Kind::HankelBracket: {
            double e0 = kInf;
            double e1 = -kInf;
            for (const auto& term : bracket_terms(p[0], p[1])) {
                if (term.coef == 0.0) continue;
                e0 = std::min(e0, term.expo);
                e1 = std::max(e1, term.expo);
            }
            if (!std::isfinite(e0)) return {-kInf, kInf};
            return {-1.0 - e0, -1.0 - (e1 - 2.0 * p[0])};
        }
        case Kind::GAlpha:
            return {-kInf, p[0] - 1.0};
        case Kind::TildeGAlpha:
            return {-kInf, ml::n_alpha(p[0]) * p[0] - 1.0};
        case Kind::Remark2Line1:
            return {-0.5, 0.5};
        case Kind::Remark2Line3:
            return {-1.0, 0.5};
        case Kind::MonomialSum:
            return {0.0, 0.0};
        case Kind::BetaKernel:
            return {-p[0], kInf};
        case Kind::GammaKernel:
            return {-p[0], kInf};
        case Kind::StableDensity:
            return {-kInf, p[0]};
        case Kind::PointMass:
        case Kind::Zero:
            return {-kInf, kInf};
        case Kind::Composite:
        case Kind::Sum: {
            MellinStrip st{-kInf, kInf};
            for (const auto& f : spec.factors) {
                const auto fs = mellin_strip(f);
                st.lo = std::max(st.lo, fs.lo);
                st.hi = std::min(st.hi, fs.hi);
            }
            return st;
        }
    }
    return {0.0, 0.0};
}

bool has_closed_mellin(const DensitySpec& spec) {
    switch (spec.kind) {
        case Kind::HankelBracket:
        case Kind::Remark2Line1:
        case Kind::Remark2Line3:
        case Kind::MonomialSum:
            return false;
        case Kind::TildeFAlpha:
            return true;
        case Kind::Composite:
        case Kind::Sum:
            return std::all_of(spec.factors.begin(), spec.factors.end(),
                               [](const DensitySpec& f) { return has_closed_mellin(f); });
        default:
            return true;
    }
}

double mellin_closed_spec(const DensitySpec& spec, double s) {
    if (!has_closed_mellin(spec)) {
        throw DomainError(std::string("mellin_closed_spec: no closed form for ") +
                          to_string(spec.kind));
    }
    if (!mellin_strip(spec).contains(s)) {
        throw StripError("mellin_closed_spec: s outside the strip of " + spec.describe());
    }
    const auto& p = spec.params;
    const double a = p.empty() ? 0.0 : p[0];
    switch (spec.kind) {
        case Kind::FAlpha:
            return closed_m(a, s);
        case Kind::FHat:
            return exa_mellin(a, s + 1.0);
        case Kind::ExaDensity:
            return exa_mellin(a, s);
        case Kind::TAlpha:
            return -(exa_mellin(a, s) + exa_mellin(a, s + 1.0));
        case Kind::EaxxDensity:
            return -exa_mellin(a, s);
        case Kind::UPowDensity:
            return -a / (a - 1.0) * exa_mellin(a, s);
        case Kind::UPowSizeBias:
            return -a * exa_mellin(a, s + 1.0);
        case Kind::TildeFAlpha:
            return mellin_closed(a, s, true);
        case Kind::HAlphaBeta:
            // Integration by parts: int t^s (t f')dt = -(s+1) M_f(s).
            return -(p[1] + s) * closed_m(a, s);
        case Kind::GAlpha:
            return -std::tgamma(1.0 - (1.0 + s) / a) * rgamma(1.0 - 1.0 / a);
        case Kind::TildeGAlpha: {
            const int n = ml::n_alpha(a);
            return -std::tgamma(n - (1.0 + s) / a) * rgamma(n - 1.0 / a);
        }
        case Kind::BetaKernel:
            return std::exp(std::lgamma(p[0] + s) + std::lgamma(p[0] + p[1]) -
                            std::lgamma(p[0]) - std::lgamma(p[0] + p[1] + s));
        case Kind::GammaKernel:
            return std::exp(std::lgamma(p[0] + s) - std::lgamma(p[0]));
        case Kind::StableDensity:
            return std::tgamma(1.0 - s / a) * rgamma(1.0 - s);
        case Kind::FactorizedH:
            return closed_m(a, s) * std::tgamma(1.0 + s) * std::tgamma(a) * rgamma(a + s);
        case Kind::FactorizedHTilde:
            return closed_m(a, s) * std::tgamma(1.0 + s) * std::tgamma(1.0 - a) *
                   rgamma(1.0 - a + s);
        case Kind::PointMass:
            return std::pow(a, s);
        case Kind::Zero:
            return 0.0;
        case Kind::Composite: {
            double m = spec.prefactor;
            for (const auto& f : spec.factors) m *= mellin_closed_spec(f, s);
            return m;
        }
        case Kind::Sum: {
            double m = 0.0;
            for (const auto& f : spec.factors) m += mellin_closed_spec(f, s);
            return spec.prefactor * m;
        }
        default:
            break;
    }
    throw DomainError("mellin_closed_spec: no closed form");
}

// ---------------------------------------------------------------- convolution

double mconv(const DensitySpec& f, const DensitySpec& g, double x, const quadrature::Options& opt) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mconv: requires x > 0");
    if (f.kind == Kind::Zero || g.kind == Kind::Zero) return 0.0;
    if (f.kind == Kind::PointMass && g.kind == Kind::PointMass) {
        throw DomainError("mconv: product of point masses has no density");
    }
    if (f.kind == Kind::PointMass) {
        const double c = f.params[0];
        return x / c < g.support.hi ? density_eval(g, x / c) / c : 0.0;
    }
    if (g.kind == Kind::PointMass) return mconv(g, f, x, opt);
    if (!f.pointwise() || !g.pointwise()) {
        throw DomainError("mconv: both factors must be pointwise evaluable");
    }
    // Integrate over the variable of the factor with bounded support when
    // there is one, so that endpoint singularities sit at quadrature nodes'
    // accumulation points.
    const bool swap = std::isfinite(g.support.hi) && !std::isfinite(f.support.hi);
    const DensitySpec& p = swap ? g : f;
    const DensitySpec& q = swap ? f : g;
    const double lo = std::max(p.support.lo, std::isfinite(q.support.hi) ? x / q.support.hi : 0.0);
    const double hi = std::min(p.support.hi, q.support.lo > 0.0 ? x / q.support.lo : kInf);
    if (!(hi > lo)) return 0.0;
    auto integrand = [&](double u) {
        const double v = x / u;
        if (!(v < q.support.hi) || !(v > 0.0) || !std::isfinite(v)) return 0.0;
        const double pu = density_eval(p, u);
        if (pu == 0.0) return 0.0;
        return pu * density_eval(q, v) / u;
    };
    if (std::isfinite(hi)) return quadrature::finite(integrand, lo, hi, opt).value;
    return quadrature::half_line(integrand, lo, opt).value;
}

double laplace_of_g(double alpha, double u, bool tilde) {
    if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("laplace_of_g: requires u > 0");
    double e;  // power of v in the integrand after v = t^-alpha
    double c;
    if (!tilde) {
        if (!(alpha > 0.5 && alpha < 1.0)) {
            throw ParameterError("laplace_of_g: plain form requires alpha in (1/2, 1)");
        }
        e = -1.0 / alpha;
        c = (1.0 - alpha) * rgamma(2.0 - 1.0 / alpha);
    } else {
        if (!(alpha > 0.0 && alpha < 0.5) || reciprocal_integer(alpha)) {
            throw ParameterError("laplace_of_g: tilde form requires alpha in (0, 1/2), not 1/n");
        }
        const int n = ml::n_alpha(alpha);
        e = n - 1.0 - 1.0 / alpha;
        c = (1.0 - n * alpha) * rgamma(n + 1.0 - 1.0 / alpha);
    }
    const double inv = 1.0 / alpha;
    auto integrand = [&](double v) {
        const double l = e * std::log(v) - v - u * std::pow(v, -inv);
        return l < -745.0 ? 0.0 : std::exp(l);
    };
    quadrature::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-300;
    opt.max_level = 10;
    return c / alpha * quadrature::half_line(integrand, 0.0, opt).value;
}

// ---------------------------------------------------------------- catalog

DensitySpec compose_bernstein(ml::AlphaBeta ab) {
    const double a = ab.alpha;
    double b = ab.beta;
    if (a == 1.0 || (a == 0.5 && b == 0.5)) return DensitySpec::zero();

    if (a > 0.0 && a < 1.0 && geq(b, std::max(a, 1.0 - a))) {
        if (near(b, 1.0)) return DensitySpec::f_alpha(a);
        if (b > 1.0) {
            return DensitySpec::composite(
                {DensitySpec::beta_kernel(1.0, b - 1.0), DensitySpec::f_alpha(a)}, rgamma(b));
        }
        if (a > 0.5) {
            if (near(b, a)) return DensitySpec::composite({DensitySpec::factorized_h(a)}, rgamma(a));
            return DensitySpec::composite(
                {DensitySpec::beta_kernel(a, b - a), DensitySpec::factorized_h(a)}, rgamma(b));
        }
        // alpha <= 1/2: tilde h composite plus monomials x^(-alpha k).
        const bool at_edge = near(b, 1.0 - a);
        if (at_edge) b = 1.0 - a;
        const int n = ml::n_alpha(a);
        std::vector<double> coeffs;
        std::vector<double> expos;
        for (int k = 1; k <= n - 1; ++k) {
            const double ck = rgamma(1.0 - a * k) * rgamma(a * k + b - 1.0);
            if (ck == 0.0) continue;
            coeffs.push_back(ck);
            expos.push_back(a * k);
        }
        std::vector<DensitySpec> terms;
        if (!reciprocal_integer(a)) {
            if (at_edge) {
                terms.push_back(DensitySpec::composite({DensitySpec::factorized_h_tilde(a)},
                                                       rgamma(1.0 - a)));
            } else {
                terms.push_back(DensitySpec::composite(
                    {DensitySpec::beta_kernel(1.0 - a, a + b - 1.0),
                     DensitySpec::factorized_h_tilde(a)},
                    rgamma(b)));
            }
        }
        if (!coeffs.empty()) terms.push_back(DensitySpec::monomial_sum(coeffs, expos));
        if (terms.empty()) return DensitySpec::zero();
        if (terms.size() == 1) return terms[0];
        return DensitySpec::sum(std::move(terms));
    }

    if (a > 1.0 && leq(a, 2.0) && geq(b, 1.0)) {
        const DensitySpec t = DensitySpec::t_alpha(near(a, 2.0) ? 2.0 : a);
        if (near(b, 1.0)) return t;
        return DensitySpec::composite({DensitySpec::beta_kernel(1.0, b - 1.0), t}, rgamma(b));
    }

    if (a > 0.0 && a < 1.0 && leq(b, std::min(a, 1.0 - a))) {
        return DensitySpec::composite(
            {DensitySpec::beta_kernel(1.0, b), DensitySpec::h_alpha_beta(a, b)}, rgamma(b + 1.0));
    }

    throw RegionError("compose_bernstein: no complete-monotonicity claim for this (alpha, beta)");
}

DensitySpec thmb_bernstein(ml::AlphaBeta ab, ml::ThmB which) {
    const double a = ab.alpha;
    const double b = ab.beta;
    if (!geq(b, 1.0)) throw RegionError("thmb_bernstein: requires beta >= 1");
    DensitySpec base;
    double weight = 1.0;
    using ml::ThmB;
    if (a > 0.0 && a < 1.0) {
        if (which == ThmB::TermMinusF) {
            base = DensitySpec::exa(a);
        } else if (which == ThmB::LbFMinusTerm) {
            base = DensitySpec::f_hat(a);
        } else {
            throw RegionError("thmb_bernstein: for alpha < 1 the CM differences are term-F and LbF-term");
        }
    } else if (a > 1.0 && a < 2.0) {
        if (which == ThmB::FMinusTerm) {
            base = DensitySpec::eaxx(a);
        } else if (which == ThmB::TermMinusLbF) {
            base = DensitySpec::upow_size_bias(a);
            weight = 1.0 / a;
        } else {
            throw RegionError("thmb_bernstein: for alpha in (1,2) the CM differences are F-term and term-LbF");
        }
    } else if (a == 2.0) {
        if (which != ThmB::FMinusTerm && which != ThmB::TermMinusLbF) {
            throw RegionError("thmb_bernstein: for alpha = 2 the CM differences are F-term and term-LbF");
        }
        base = DensitySpec::point_mass(1.0);
        weight = 0.5;
    } else {
        throw RegionError("thmb_bernstein: alpha must lie in (0,1) or (1,2]");
    }
    if (near(b, 1.0)) {
        if (weight == 1.0) return base;
        return DensitySpec::composite({base}, weight);
    }
    return DensitySpec::composite({DensitySpec::beta_kernel(1.0, b - 1.0), base},
                                  weight * rgamma(b));
}

}  // namespace necktie::bernstein
