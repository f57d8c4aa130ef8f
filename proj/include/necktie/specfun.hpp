#pragma once

#include "necktie/real.hpp"

namespace necktie::specfun {

/// Stopping rule for the power series used throughout the library.
struct PrecisionConfig {
    double series_tol = 1e-17;  ///< relative size of the last retained term
    int max_terms = 20000;

    /// Throws ParameterError unless series_tol is in (0, 1e-6] and max_terms >= 64.
    void validate() const;
};

/// sin(pi x) with exact zeros at the integers.
double sinpi(double x);
quad sinpi(quad x);

/// cos(pi x) with exact zeros at the half-integers.
double cospi(double x);

/// Reciprocal Gamma function, an entire function of x.
///
/// Returns exactly 0 at the non-positive integers. Negative arguments go
/// through the reflection formula so that values next to the poles of
/// Gamma keep full relative accuracy.
double rgamma(double x);
quad rgamma(quad x);

/// log Gamma(x) for x > 0; throws DomainError otherwise.
double ln_gamma(double x);

/// gamma(u, x) = int_0^x t^(u-1) e^(-t) dt for u > 0, x >= 0.
double lower_incomplete_gamma(double u, double x);

/// P(u, x) = gamma(u, x) / Gamma(u). Accepts u = 0 (for x > 0) as the limit P = 1.
double regularized_lower_gamma(double u, double x);
quad regularized_lower_gamma(quad u, quad x);

/// Chebyshev polynomial of the second kind U_n(c) by the three-term recurrence.
double chebyshev_u(int n, double c);

}  // namespace necktie::specfun
