#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "necktie/error.hpp"
#include "necktie/quadrature.hpp"

using namespace necktie;
using namespace necktie::quadrature;

TEST_CASE("finite intervals with endpoint singularities") {
    CHECK(std::fabs(finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value - 2.0) < 1e-12);
    CHECK(std::fabs(finite([](double x) { return std::log(x); }, 0.0, 1.0).value + 1.0) < 1e-12);
    CHECK(std::fabs(finite([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0).value - 10.0) < 1e-9);
    const double pi = std::numbers::pi;
    // no node lies within eps/2 of x = 1, and that sliver holds sqrt(eps) ~ 1.5e-8 of the mass
    Options o;
    o.rel_tol = 1e-8;
    CHECK(std::fabs(finite([](double x) { return 1.0 / std::sqrt((1.0 - x) * (1.0 + x)); }, -1.0, 1.0, o).value - pi) <
          5e-8);
}

TEST_CASE("half line") {
    CHECK(std::fabs(half_line([](double x) { return std::exp(-x); }, 0.0).value - 1.0) < 1e-13);
    CHECK(std::fabs(half_line([](double x) { return 1.0 / (1.0 + x * x); }, 0.0).value - std::numbers::pi / 2) <
          1e-11);
    // int_1^inf x^-3 = 1/2
    CHECK(std::fabs(half_line([](double x) { return std::pow(x, -3.0); }, 1.0).value - 0.5) < 1e-12);
}

TEST_CASE("unconverged integral throws") {
    Options o;
    o.max_level = 3;
    o.rel_tol = 1e-15;
    CHECK_THROWS_AS(finite([](double x) { return std::sin(200.0 * x); }, 0.0, 3.0, o), ConvergenceError);
}

TEST_CASE("options validation") {
    Options bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("laplace batch matches single integrals") {
    // int_0^inf e^{-xt} t^{-1/2} dt = sqrt(pi/x)
    const std::vector<double> xs{0.1, 0.5, 1.0, 3.0, 10.0};
    const auto f = [](double t) { return 1.0 / std::sqrt(t); };
    const auto head = laplace_batch(f, 0.0, 1.0, xs);
    const auto tail = laplace_batch(f, 1.0, INFINITY, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double exact = std::sqrt(std::numbers::pi / xs[i]);
        CHECK(std::fabs(head[i].value + tail[i].value - exact) / exact < 1e-11);
        CHECK(head[i].converged);
    }
}
