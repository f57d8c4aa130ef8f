#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "necktie/error.hpp"
#include "necktie/specfun.hpp"

using namespace necktie;
using namespace necktie::specfun;

namespace {
double rel(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }
}  // namespace

// Reference values from tests/oracles/mp_values.py (mpmath, 40 digits).

TEST_CASE("rgamma zeros and reflection") {
    for (int k = 0; k <= 6; ++k) CHECK(rgamma(-static_cast<double>(k)) == 0.0);
    CHECK(rel(rgamma(-2.5), -1.057855469152043038) < 1e-14);
    CHECK(rel(rgamma(-3.0 + 1e-8), -5.9999999246329394656e-8) < 1e-7);
    CHECK(rel(rgamma(0.1), 0.10511370061117778075) < 1e-14);
    CHECK(rel(rgamma(5.0), 1.0 / 24.0) < 1e-15);
    CHECK(rel(rgamma(0.5), 1.0 / std::sqrt(std::numbers::pi)) < 1e-15);
}

TEST_CASE("rgamma quad agrees with double") {
    for (double x : {-4.3, -0.7, 0.25, 3.5, 12.0}) {
        CHECK(rel(static_cast<double>(rgamma(static_cast<quad>(x))), rgamma(x)) < 1e-14);
    }
}

TEST_CASE("ln_gamma") {
    CHECK(rel(ln_gamma(50.5), 146.51925549072062722) < 1e-15);
    CHECK(std::fabs(ln_gamma(1.0)) < 1e-16);
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("lower incomplete gamma") {
    // gamma(1/2, x) = sqrt(pi) erf(sqrt(x)); gamma(1, x) = 1 - e^-x
    for (double x : {0.01, 0.5, 2.0, 9.0, 30.0}) {
        CHECK(rel(lower_incomplete_gamma(0.5, x), std::sqrt(std::numbers::pi) * std::erf(std::sqrt(x))) < 1e-13);
        CHECK(rel(lower_incomplete_gamma(1.0, x), -std::expm1(-x)) < 1e-13);
    }
    CHECK(rel(lower_incomplete_gamma(2.5, 3.7), 1.0733753207253121218) < 1e-13);
    CHECK(rel(lower_incomplete_gamma(0.3, 0.01), 0.83536870479861222193) < 1e-13);
    CHECK(lower_incomplete_gamma(2.0, 0.0) == 0.0);
}

TEST_CASE("regularized lower gamma") {
    CHECK(regularized_lower_gamma(0.0, 1.5) == 1.0);
    CHECK(rel(regularized_lower_gamma(3.0, 2.0), 1.0 - std::exp(-2.0) * (1.0 + 2.0 + 2.0)) < 1e-14);
}

TEST_CASE("chebyshev U against sin((n+1)t)/sin t") {
    for (int n : {0, 1, 2, 5, 11}) {
        for (double c : {-0.9, -0.3, 0.0, 0.45, 0.8}) {
            const double t = std::acos(c);
            CHECK(std::fabs(chebyshev_u(n, c) - std::sin((n + 1) * t) / std::sin(t)) < 1e-12);
        }
    }
    CHECK(chebyshev_u(4, 1.0) == 5.0);
    CHECK(chebyshev_u(3, -1.0) == -4.0);
}

TEST_CASE("sinpi exact zeros") {
    for (int k = -3; k <= 3; ++k) CHECK(sinpi(static_cast<double>(k)) == 0.0);
    CHECK(cospi(0.5) == 0.0);
    CHECK(cospi(-1.5) == 0.0);
    CHECK(std::fabs(sinpi(0.25) - std::sqrt(0.5)) < 2.3e-16);
}

TEST_CASE("precision config validation") {
    PrecisionConfig ok;
    CHECK_NOTHROW(ok.validate());
    PrecisionConfig bad{1e-3, 100};
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    PrecisionConfig few{1e-17, 10};
    CHECK_THROWS_AS(few.validate(), ParameterError);
}
