#pragma once

// Thin overload set so the series kernels can be written once and
// instantiated for double and for the 113-bit quad type.

#include <cmath>
#include <limits>

#if defined(NECKTIE_HAVE_QUADMATH)
extern "C" {
#include <quadmath.h>
}
#endif

namespace necktie {

#if defined(NECKTIE_HAVE_QUADMATH)
using quad = __float128;
#else
using quad = long double;
#endif

template <class T>
struct real_traits;

template <>
struct real_traits<double> {
    static constexpr double epsilon = std::numeric_limits<double>::epsilon();
    static constexpr double log_max = 709.0;
    static constexpr double gamma_max = 171.0;
};

template <>
struct real_traits<quad> {
#if defined(NECKTIE_HAVE_QUADMATH)
    static constexpr double epsilon = 1.925929944387235853e-34;
    static constexpr double log_max = 11355.0;
    static constexpr double gamma_max = 1750.0;
#else
    static constexpr double epsilon = std::numeric_limits<long double>::epsilon();
    static constexpr double log_max = 11355.0;
    static constexpr double gamma_max = 1750.0;
#endif
};

namespace rmath {

inline double exp(double x) { return std::exp(x); }
inline double expm1(double x) { return std::expm1(x); }
inline double log(double x) { return std::log(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double abs(double x) { return std::fabs(x); }
inline double tgamma(double x) { return std::tgamma(x); }
inline double lgamma(double x) { return std::lgamma(x); }

#if defined(NECKTIE_HAVE_QUADMATH)
inline quad exp(quad x) { return expq(x); }
inline quad expm1(quad x) { return expm1q(x); }
inline quad log(quad x) { return logq(x); }
inline quad pow(quad x, quad y) { return powq(x, y); }
inline quad abs(quad x) { return fabsq(x); }
inline quad tgamma(quad x) { return tgammaq(x); }
inline quad lgamma(quad x) { return lgammaq(x); }
#else
inline quad exp(quad x) { return std::exp(x); }
inline quad expm1(quad x) { return std::expm1(x); }
inline quad log(quad x) { return std::log(x); }
inline quad pow(quad x, quad y) { return std::pow(x, y); }
inline quad abs(quad x) { return std::fabs(x); }
inline quad tgamma(quad x) { return std::tgamma(x); }
inline quad lgamma(quad x) { return std::lgamma(x); }
#endif

}  // namespace rmath
}  // namespace necktie
