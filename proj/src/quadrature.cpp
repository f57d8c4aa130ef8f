#include "necktie/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "necktie/error.hpp"
#include "necktie/simd/kernels.hpp"

namespace necktie::quadrature {

void Options::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol >= 0.0)) {
        throw ParameterError("quadrature: rel_tol must lie in (0, 1) and abs_tol >= 0");
    }
    if (max_level < 3 || max_level > 14) {
        throw ParameterError("quadrature: max_level must lie in [3, 14]");
    }
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kMinLevel = 3;

// Abscissae u of the trapezoidal grid added at `level`: all integers at
// level 0, odd multiples of 2^-level afterwards.
template <class Emit>
void level_nodes(int level, double u_lo, double u_hi, Emit&& emit) {
    if (level == 0) {
        for (double u = std::ceil(u_lo); u <= u_hi; u += 1.0) emit(u);
        return;
    }
    const double h = std::ldexp(1.0, -level);
    const double start = std::ceil((u_lo / h - 1.0) / 2.0);
    for (double j = start;; j += 1.0) {
        const double u = (2.0 * j + 1.0) * h;
        if (u > u_hi) break;
        if (u >= u_lo) emit(u);
    }
}

struct Node {
    double t;
    double w;
};

// Interval map: finite [a, b] by tanh-sinh, [a, inf) by exp-sinh.
class Mapping {
public:
    Mapping(double a, double b) : a_(a), b_(b), finite_(std::isfinite(b)) {
        if (!std::isfinite(a) || !(b > a)) {
            throw DomainError("quadrature: requires finite a < b");
        }
        if (finite_) {
            u_lo_ = -6.1;
            u_hi_ = 6.1;
        } else {
            u_lo_ = -6.78;  // exp(pi/2 sinh u) ~ 1e-300
            u_hi_ = 6.37;   // ~ 1e200
        }
    }

    double u_lo() const { return u_lo_; }
    double u_hi() const { return u_hi_; }

    // False when the node collapses onto an endpoint.
    bool node(double u, Node& out) const {
        const double s = kHalfPi * std::sinh(u);
        const double ch = kHalfPi * std::cosh(u);
        if (finite_) {
            const double m = 0.5 * (b_ - a_);
            const double e = std::exp(-2.0 * std::fabs(s));
            const double dist = m * 2.0 * e / (1.0 + e);  // m (1 - |tanh s|)
            out.t = u < 0.0 ? a_ + dist : b_ - dist;
            out.w = m * ch * 4.0 * e / ((1.0 + e) * (1.0 + e));
            return out.t > a_ && out.t < b_ && out.w > 0.0;
        }
        const double es = std::exp(s);
        out.t = a_ + es;
        out.w = ch * es;
        return out.t > a_ && out.w > 0.0 && std::isfinite(out.t);
    }

private:
    double a_;
    double b_;
    bool finite_;
    double u_lo_ = 0.0;
    double u_hi_ = 0.0;
};

double eval_checked(const Integrand& f, double t) {
    const double v = f(t);
    if (!std::isfinite(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "quadrature: non-finite integrand at t = %.6g", t);
        throw ConvergenceError(buf, std::numeric_limits<double>::quiet_NaN(), v);
    }
    return v;
}

bool done(double value, double err, const Options& opt) {
    return err <= std::max(opt.rel_tol * std::fabs(value), opt.abs_tol);
}

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
    opt.validate();
    const Mapping map(a, b);
    double sum = 0.0;
    double comp = 0.0;
    double prev = 0.0;
    Result r;
    for (int level = 0; level <= opt.max_level; ++level) {
        level_nodes(level, map.u_lo(), map.u_hi(), [&](double u) {
            Node nd;
            if (!map.node(u, nd)) return;
            const double term = nd.w * eval_checked(f, nd.t);
            ++r.evaluations;
            const double y = term - comp;
            const double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        });
        const double value = std::ldexp(sum, -level);
        if (level >= kMinLevel) {
            r.value = value;
            r.error = std::fabs(value - prev);
            if (done(value, r.error, opt)) {
                r.converged = true;
                return r;
            }
        }
        prev = value;
    }
    throw ConvergenceError("quadrature: tolerance not reached", r.value, r.error);
}

}  // namespace

Result finite(const Integrand& f, double a, double b, const Options& opt) {
    if (!std::isfinite(b)) throw DomainError("quadrature::finite: requires finite b");
    return integrate(f, a, b, opt);
}

Result half_line(const Integrand& f, double a, const Options& opt) {
    return integrate(f, a, std::numeric_limits<double>::infinity(), opt);
}

std::vector<Result> laplace_batch(const Integrand& f, double a, double b,
                                  std::span<const double> xs, const Options& opt) {
    opt.validate();
    if (a < 0.0) throw DomainError("laplace_batch: requires a >= 0");
    for (double x : xs) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("laplace_batch: requires x >= 0");
    }
    const Mapping map(a, b);
    const std::size_t m = xs.size();
    std::vector<double> sums(m, 0.0);
    std::vector<double> prev(m, 0.0);
    std::vector<Result> out(m);
    std::vector<double> c;
    std::vector<double> t;
    int evaluations = 0;
    std::size_t open = m;
    for (int level = 0; level <= opt.max_level && open > 0; ++level) {
        c.clear();
        t.clear();
        level_nodes(level, map.u_lo(), map.u_hi(), [&](double u) {
            Node nd;
            if (!map.node(u, nd)) return;
            const double v = eval_checked(f, nd.t);
            ++evaluations;
            if (v == 0.0) return;
            c.push_back(nd.w * v);
            t.push_back(nd.t);
        });
        for (std::size_t i = 0; i < m; ++i) {
            if (out[i].converged) continue;
            sums[i] += simd::weighted_exp_sum(c, t, xs[i]);
            const double value = std::ldexp(sums[i], -level);
            out[i].evaluations = evaluations;
            if (level >= kMinLevel) {
                out[i].value = value;
                out[i].error = std::fabs(value - prev[i]);
                if (done(value, out[i].error, opt)) {
                    out[i].converged = true;
                    --open;
                }
            }
            prev[i] = value;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!out[i].converged) {
            throw ConvergenceError("laplace_batch: tolerance not reached at x = " +
                                       std::to_string(xs[i]),
                                   out[i].value, out[i].error);
        }
    }
    return out;
}

}  // namespace necktie::quadrature
