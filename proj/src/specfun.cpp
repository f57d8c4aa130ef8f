#include "necktie/specfun.hpp"

#include <cmath>
#include <numbers>
#include <type_traits>

#include "necktie/error.hpp"

namespace necktie::specfun {

void PrecisionConfig::validate() const {
    if (!(series_tol > 0.0 && series_tol <= 1e-6)) {
        throw ParameterError("PrecisionConfig: series_tol must lie in (0, 1e-6]");
    }
    if (max_terms < 64) {
        throw ParameterError("PrecisionConfig: max_terms must be at least 64");
    }
}

namespace {

template <class T>
T pi_v();
template <>
double pi_v<double>() {
    return std::numbers::pi;
}
template <>
quad pi_v<quad>() {
#if defined(NECKTIE_HAVE_QUADMATH)
    static const quad pi = acosq(quad(-1));
    return pi;
#else
    return std::numbers::pi_v<long double>;
#endif
}

template <class T>
T fmod_t(T x, T y) {
#if defined(NECKTIE_HAVE_QUADMATH)
    if constexpr (std::is_same_v<T, quad>) {
        return fmodq(x, y);
    } else
#endif
    {
        return std::fmod(x, y);
    }
}

template <class T>
T sin_t(T x) {
#if defined(NECKTIE_HAVE_QUADMATH)
    if constexpr (std::is_same_v<T, quad>) {
        return sinq(x);
    } else
#endif
    {
        return std::sin(x);
    }
}

template <class T>
T floor_t(T x) {
#if defined(NECKTIE_HAVE_QUADMATH)
    if constexpr (std::is_same_v<T, quad>) {
        return floorq(x);
    } else
#endif
    {
        return std::floor(x);
    }
}

template <class T>
T sinpi_impl(T x) {
    // Reduce to r in [-1, 1], then fold onto [-1/2, 1/2].
    T r = fmod_t(x, T(2));
    if (r > T(1)) r -= T(2);
    if (r < T(-1)) r += T(2);
    if (r > T(0.5)) r = T(1) - r;
    if (r < T(-0.5)) r = T(-1) - r;
    if (r == T(0)) return T(0);
    return sin_t(pi_v<T>() * r);
}

template <class T>
T rgamma_impl(T x) {
    using rmath::lgamma;
    using rmath::tgamma;
    using rmath::exp;
    if (x <= T(0) && x == floor_t(x)) return T(0);
    if (x < T(0.5)) {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        const T s = sinpi_impl(x);
        const T one_minus = T(1) - x;
        if (one_minus < T(real_traits<T>::gamma_max)) {
            return s * tgamma(one_minus) / pi_v<T>();
        }
        const T mag = exp(lgamma(one_minus));
        return s * mag / pi_v<T>();
    }
    if (x < T(real_traits<T>::gamma_max)) {
        return T(1) / tgamma(x);
    }
    return exp(-lgamma(x));
}

// Regularized lower incomplete gamma, series below u + 1 and Lentz
// continued fraction for the complementary Q above.
template <class T>
T reg_lower_gamma_impl(T u, T x) {
    using rmath::abs;
    using rmath::exp;
    using rmath::lgamma;
    using rmath::log;
    if (x < T(0) || u < T(0)) {
        throw DomainError("regularized_lower_gamma: requires u >= 0 and x >= 0");
    }
    if (x == T(0)) {
        if (u == T(0)) throw DomainError("regularized_lower_gamma: P(0, 0) is undefined");
        return T(0);
    }
    if (u == T(0)) return T(1);

    const T eps = T(real_traits<T>::epsilon) / T(4);
    const int max_iter = 100000;

    if (x < u + T(1)) {
        T term = T(1);
        T sum = T(1);
        for (int n = 1; n < max_iter; ++n) {
            term *= x / (u + T(n));
            sum += term;
            if (abs(term) <= eps * abs(sum)) break;
        }
        return exp(u * log(x) - x - lgamma(u + T(1))) * sum;
    }

    const T tiny = T(1e-300);
    T b = x + T(1) - u;
    T c = T(1) / tiny;
    T d = T(1) / b;
    T h = d;
    for (int i = 1; i < max_iter; ++i) {
        const T an = -T(i) * (T(i) - u);
        b += T(2);
        d = an * d + b;
        if (abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (abs(c) < tiny) c = tiny;
        d = T(1) / d;
        const T delta = d * c;
        h *= delta;
        if (abs(delta - T(1)) <= eps) break;
    }
    const T q = exp(u * log(x) - x - lgamma(u)) * h;
    return T(1) - q;
}

}  // namespace

double sinpi(double x) { return sinpi_impl(x); }
quad sinpi(quad x) { return sinpi_impl(x); }

double cospi(double x) { return sinpi_impl(x + 0.5); }

double rgamma(double x) { return rgamma_impl(x); }
quad rgamma(quad x) { return rgamma_impl(x); }

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: requires x > 0");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double regularized_lower_gamma(double u, double x) { return reg_lower_gamma_impl(u, x); }
quad regularized_lower_gamma(quad u, quad x) { return reg_lower_gamma_impl(u, x); }

double lower_incomplete_gamma(double u, double x) {
    if (!(u > 0.0) || !(x >= 0.0)) {
        throw DomainError("lower_incomplete_gamma: requires u > 0 and x >= 0");
    }
    if (x == 0.0) return 0.0;
    return regularized_lower_gamma(u, x) * std::tgamma(u);
}

double chebyshev_u(int n, double c) {
    if (n < 0) throw DomainError("chebyshev_u: requires n >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * c;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * c * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace necktie::specfun
