#include "necktie/mlcore.hpp"

#include <cmath>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "necktie/error.hpp"

namespace necktie::ml {

using specfun::rgamma;

AlphaBeta::AlphaBeta(double a, double b) : alpha(a), beta(b) {
    if (!(std::isfinite(a) && a > 0.0) || !(std::isfinite(b) && b > 0.0)) {
        throw DomainError("AlphaBeta: alpha and beta must be finite and positive");
    }
}

void EvalDomain::validate() const {
    if (!(max_abs_arg > 0.0 && max_abs_arg <= 80.0)) {
        throw ParameterError("EvalDomain: max_abs_arg must lie in (0, 80]");
    }
}

namespace {

// Double results are kept below kAcceptRel estimated relative error;
// the quad re-summation must reach kQuadRel (or the absolute floor for
// functions that vanish identically).
constexpr double kAcceptRel = 1e-13;
constexpr double kQuadRel = 1e-12;
constexpr double kAbsFloor = 1e-16;
constexpr int kMaxTerms = 200000;

// One summand family: sign * scale * sum_{n >= n0} w(n) / Gamma(b + alpha n) * z^n,
// where w(n) = n when weight_n is set and 1 otherwise.
struct Part {
    double sign;
    double b;
    int n0;
    double shift;  // scale = x^shift in x mode; ignored in z mode
    bool weight_n = false;
};

template <class T>
struct Sum {
    T value{};
    double error = 0.0;  // absolute rounding-error estimate
};

// Per-thread table of 1/Gamma(b + alpha n), grown on demand.
template <class T>
const std::vector<T>& coefficients(double b, double alpha, int need) {
    thread_local std::map<std::pair<double, double>, std::vector<T>> cache;
    if (cache.size() > 512) cache.clear();
    auto& v = cache[{b, alpha}];
    if (static_cast<int>(v.size()) < need) {
        const int start = static_cast<int>(v.size());
        const int target = std::max(need, 2 * start);
        v.reserve(target);
        for (int n = start; n < target; ++n) {
            v.push_back(rgamma(T(b) + T(alpha) * T(n)));
        }
    }
    return v;
}

// Neumaier-compensated sum of one part. `radius` is |z|^(1/alpha).
template <class T>
void sum_part(const Part& p, double alpha, T z, T scale, double radius, T& acc, T& comp,
              double& mag, int& terms) {
    using rmath::abs;
    // Terms grow until alpha n ~ radius and then decay factorially.
    const int n_peak = static_cast<int>(radius / alpha) + 2;
    const double tiny = real_traits<T>::epsilon * 1e-3;
    int chunk = std::max(64, 2 * n_peak + 32);
    const std::vector<T>* c = &coefficients<T>(p.b, alpha, p.n0 + chunk);

    T zn{};
    if constexpr (std::is_same_v<T, double>) {
        zn = std::pow(z, p.n0);
    } else {
        zn = rmath::pow(z, T(p.n0));
    }
    int quiet = 0;
    for (int n = p.n0; n < p.n0 + kMaxTerms; ++n) {
        if (n >= static_cast<int>(c->size())) {
            c = &coefficients<T>(p.b, alpha, n + chunk);
        }
        if constexpr (std::is_same_v<T, double>) {
            zn = std::pow(z, n);
        }
        T t = (*c)[n] * zn * scale;
        if (p.weight_n) t *= T(n);
        if (p.sign < 0) t = -t;
        const T s = acc + t;
        if (abs(acc) >= abs(t)) {
            comp += (acc - s) + t;
        } else {
            comp += (t - s) + acc;
        }
        acc = s;
        const double at = static_cast<double>(abs(t));
        mag += at;
        ++terms;
        if constexpr (!std::is_same_v<T, double>) {
            // Running product, re-anchored every 16 steps to bound drift.
            zn = ((n + 1) % 16 == 0) ? rmath::pow(z, T(n + 1)) : zn * z;
        }
        if (n > n_peak && at <= tiny * mag) {
            if (++quiet >= 3) return;
        } else {
            quiet = 0;
        }
        if (mag == 0.0 && n > n_peak && z == T(0)) return;
    }
    throw OutOfRangeError("ml series did not converge within the term limit");
}

template <class T>
Sum<T> sum_parts(std::span<const Part> parts, double alpha, double arg, bool x_mode,
                 double radius) {
    T acc{};
    T comp{};
    double mag = 0.0;
    int terms = 0;
    const T z = x_mode ? rmath::pow(T(arg), T(alpha)) : T(arg);
    for (const Part& p : parts) {
        const T scale = (x_mode && p.shift != 0.0) ? rmath::pow(T(arg), T(p.shift)) : T(1);
        sum_part<T>(p, alpha, z, scale, radius, acc, comp, mag, terms);
    }
    Sum<T> out;
    out.value = acc + comp;
    const double eps = real_traits<T>::epsilon;
    if constexpr (std::is_same_v<T, double>) {
        out.error = 6.0 * eps * mag + eps * std::fabs(out.value);
    } else {
        out.error = 24.0 * eps * mag;
    }
    return out;
}

bool accepted(double value, double error) {
    return error <= kQuadRel * std::fabs(value) || error <= kAbsFloor;
}

double radius_of(double alpha, double arg, bool x_mode, const EvalDomain& dom) {
    dom.validate();
    const double r = x_mode ? std::fabs(arg) : std::pow(std::fabs(arg), 1.0 / alpha);
    if (!(r <= dom.max_abs_arg)) {
        throw OutOfRangeError("ml: |z|^(1/alpha) outside the series trust region");
    }
    return r;
}

// Double first; quad when the rounding estimate is too large. An exact
// double result of 0 with no error (e.g. z = 0 parts) is returned as is.
double evaluate(std::span<const Part> parts, double alpha, double arg, bool x_mode,
                const EvalDomain& dom) {
    const double radius = radius_of(alpha, arg, x_mode, dom);
    const Sum<double> d = sum_parts<double>(parts, alpha, arg, x_mode, radius);
    if (d.error <= kAcceptRel * std::fabs(d.value)) return d.value;
    const Sum<quad> q = sum_parts<quad>(parts, alpha, arg, x_mode, radius);
    const double v = static_cast<double>(q.value);
    if (accepted(v, q.error)) return v;
    throw OutOfRangeError("ml: cancellation exceeds the extended-precision budget");
}

void require_positive(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(who) + ": requires finite x > 0");
    }
}

template <class T>
T inc_term_t(double alpha, double beta, double x) {
    using rmath::exp;
    using rmath::log;
    if (beta == 1.0) return exp(T(x)) / T(alpha);
    const T u = T(beta) - T(1);
    const T p = specfun::regularized_lower_gamma(u, T(x));
    return exp((T(1) - T(beta)) * log(T(x)) + T(x)) * p / T(alpha);
}

}  // namespace

double ml(AlphaBeta ab, double z, const EvalDomain& dom) {
    if (!std::isfinite(z)) throw DomainError("ml: z must be finite");
    const Part parts[] = {{1.0, ab.beta, 0, 0.0}};
    return evaluate(parts, ab.alpha, z, false, dom);
}

double ml_deriv(double alpha, double z, const EvalDomain& dom) {
    const AlphaBeta ab(alpha, 1.0);
    if (!std::isfinite(z)) throw DomainError("ml_deriv: z must be finite");
    // sum_{n>=1} n z^(n-1) / Gamma(1 + alpha n) = sum_{m>=0} (m+1) z^m / Gamma(1 + alpha + alpha m)
    const Part parts[] = {{1.0, 1.0 + ab.alpha, 0, 0.0, true},
                          {1.0, 1.0 + ab.alpha, 0, 0.0, false}};
    return evaluate(parts, ab.alpha, z, false, dom);
}

double big_f(AlphaBeta ab, double x, const EvalDomain& dom) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("big_f: requires finite x >= 0");
    if (x == 0.0) return rgamma(ab.beta);
    const Part parts[] = {{1.0, ab.beta, 0, 0.0}};
    return evaluate(parts, ab.alpha, x, true, dom);
}

double lb_big_f(AlphaBeta ab, double x, const EvalDomain& dom) {
    require_positive(x, "lb_big_f");
    // x^(alpha-1) E_{alpha,alpha+beta-1}(x^alpha) = sum_{n>=1} x^(alpha n - 1) / Gamma(beta - 1 + alpha n)
    const Part parts[] = {{1.0, ab.beta - 1.0, 1, -1.0}};
    return evaluate(parts, ab.alpha, x, true, dom);
}

double lb_big_f_numeric(AlphaBeta ab, double x, double h, const EvalDomain& dom) {
    require_positive(x, "lb_big_f_numeric");
    if (!(h > 0.0 && 2.0 * h < x)) throw DomainError("lb_big_f_numeric: requires 0 < 2h < x");
    auto f = [&](double t) { return big_f(ab, t, dom); };
    const double deriv =
        (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
    return deriv + (ab.beta - 1.0) * (f(x) - f(0.0)) / x;
}

double d_func(AlphaBeta ab, double x, const EvalDomain& dom) {
    require_positive(x, "d_func");
    if (ab.alpha == 1.0 || (ab.alpha == 0.5 && ab.beta == 0.5)) return 0.0;
    const Part parts[] = {{1.0, ab.beta - 1.0, 1, -1.0}, {-1.0, ab.beta, 0, 0.0}};
    return evaluate(parts, ab.alpha, x, true, dom);
}

double dbar_func(AlphaBeta ab, double x, const EvalDomain& dom) { return -d_func(ab, x, dom); }

int n_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("n_alpha: requires alpha in (0, 1]");
    const double inv = 1.0 / alpha;
    const double n = std::round(inv);
    if (std::fabs(alpha * n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) {
        return static_cast<int>(n);
    }
    return static_cast<int>(std::floor(inv));
}

double tilde_d(double alpha, double x, const EvalDomain& dom) {
    if (!(alpha > 0.0 && alpha <= 0.5)) throw DomainError("tilde_d: requires alpha in (0, 1/2]");
    require_positive(x, "tilde_d");
    const int n = n_alpha(alpha);
    if (alpha * n == 1.0) return 0.0;
    // D_{alpha,1-alpha} with the monomials k < n removed: the first series then
    // starts at index n.
    const Part parts[] = {{1.0, -alpha, n, -1.0}, {-1.0, 1.0 - alpha, 0, 0.0}};
    return evaluate(parts, alpha, x, true, dom);
}

double inc_term(AlphaBeta ab, double x) {
    if (ab.beta < 1.0) throw DomainError("inc_term: requires beta >= 1");
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("inc_term: requires finite x >= 0");
    if (x == 0.0) return ab.beta == 1.0 ? 1.0 / ab.alpha : 0.0;
    return inc_term_t<double>(ab.alpha, ab.beta, x);
}

const char* to_string(ThmB which) {
    switch (which) {
        case ThmB::FMinusTerm: return "F-term";
        case ThmB::TermMinusF: return "term-F";
        case ThmB::LbFMinusTerm: return "LbF-term";
        case ThmB::TermMinusLbF: return "term-LbF";
    }
    return "?";
}

double thmb_diff(AlphaBeta ab, double x, ThmB which, const EvalDomain& dom) {
    require_positive(x, "thmb_diff");
    if (ab.beta < 1.0) throw DomainError("thmb_diff: requires beta >= 1");
    if (ab.alpha == 1.0) return 0.0;
    const bool use_lb = which == ThmB::LbFMinusTerm || which == ThmB::TermMinusLbF;
    const double sign = (which == ThmB::FMinusTerm || which == ThmB::LbFMinusTerm) ? 1.0 : -1.0;

    const Part f_part[] = {{1.0, ab.beta, 0, 0.0}};
    const Part lb_part[] = {{1.0, ab.beta - 1.0, 1, -1.0}};
    std::span<const Part> parts = use_lb ? std::span<const Part>(lb_part) : std::span<const Part>(f_part);

    const double radius = radius_of(ab.alpha, x, true, dom);
    const Sum<double> s = sum_parts<double>(parts, ab.alpha, x, true, radius);
    const double term = inc_term_t<double>(ab.alpha, ab.beta, x);
    const double v = s.value - term;
    // exp and the incomplete gamma each carry a few ulps scaled by x.
    const double err = s.error + (x + 8.0) * std::numeric_limits<double>::epsilon() * std::fabs(term);
    if (err <= kAcceptRel * std::fabs(v)) return sign * v;

    const Sum<quad> sq = sum_parts<quad>(parts, ab.alpha, x, true, radius);
    const quad tq = inc_term_t<quad>(ab.alpha, ab.beta, x);
    const double vq = static_cast<double>(sq.value - tq);
    const double errq =
        sq.error + (x + 8.0) * real_traits<quad>::epsilon * static_cast<double>(rmath::abs(tq));
    if (accepted(vq, errq)) return sign * vq;
    throw OutOfRangeError("thmb_diff: cancellation exceeds the extended-precision budget");
}

double tail_expansion(AlphaBeta ab, double x, int n) {
    if (!(x > 1.0)) throw DomainError("tail_expansion: requires x > 1");
    if (n < 1) throw DomainError("tail_expansion: requires n >= 1");
    double s = 0.0;
    for (int k = 1; k <= n; ++k) {
        s += std::pow(x, -k) * rgamma(ab.beta - k) / ab.alpha;
        s -= std::pow(x, -ab.alpha * k) * rgamma(ab.beta - ab.alpha * k);
    }
    return s;
}

}  // namespace necktie::ml
