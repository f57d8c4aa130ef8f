#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "necktie/bernstein.hpp"
#include "necktie/error.hpp"
#include "necktie/quadrature.hpp"
#include "necktie/verify.hpp"

using namespace necktie;
using namespace necktie::bernstein;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }

double integral(const DensitySpec& spec) {
    const auto f = [&](double t) { return density_eval(spec, t); };
    quadrature::Options o;
    o.rel_tol = 1e-11;
    o.max_level = 12;
    return quadrature::finite(f, 0.0, 1.0, o).value + quadrature::half_line(f, 1.0, o).value;
}

}  // namespace

TEST_CASE("FAlpha pointwise") {
    for (double a : {0.3, 0.6, 0.9}) {
        for (double t : {0.01, 0.5, 1.0, 7.0}) {
            const double c = std::cos(kPi * a), s = std::sin(kPi * a);
            const double q = (std::pow(t, a) - c) * (std::pow(t, a) - c) + s * s;
            CHECK(rel(density_eval(DensitySpec::f_alpha(a), t), s * std::pow(t, a - 1) * (1 + t) / (kPi * q)) < 1e-14);
            CHECK(rel(denominator(a, t), q) < 1e-14);
        }
    }
}

TEST_CASE("probability normalizations") {
    for (double a : {1.25, 1.5, 1.75}) {
        CHECK(std::fabs(integral(DensitySpec::t_alpha(a)) - 1.0) < 1e-8);
        CHECK(std::fabs(integral(DensitySpec::upow(a)) - 1.0) < 1e-8);
    }
    CHECK(DensitySpec::t_alpha(2.0).kind == Kind::PointMass);
}

TEST_CASE("factory and support errors") {
    CHECK_THROWS_AS(DensitySpec::f_alpha(1.5), ParameterError);
    CHECK_THROWS_AS(DensitySpec::t_alpha(0.5), ParameterError);
    CHECK_THROWS_AS(DensitySpec::beta_kernel(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(density_eval(DensitySpec::beta_kernel(2.0, 3.0), 1.5), DomainError);
    CHECK_THROWS_AS(density_eval(DensitySpec::factorized_h(0.7), 1.0), DomainError);
}

TEST_CASE("stable density") {
    // alpha = 1/2 is the Levy law: x^-3/2 e^{-1/(4x)} / (2 sqrt(pi))
    for (double x : {0.05, 0.3, 1.0, 4.0, 50.0}) {
        const double levy = std::pow(x, -1.5) * std::exp(-0.25 / x) / (2.0 * std::sqrt(kPi));
        CHECK(rel(stable_density(0.5, x), levy) < 1e-10);
    }
    // Laplace transform e^{-lambda^alpha} at alpha = 0.7
    const auto z = DensitySpec::stable(0.7);
    for (double l : {0.5, 2.0}) {
        CHECK(rel(verify::laplace_quad(z, l), std::exp(-std::pow(l, 0.7))) < 1e-8);
    }
}

TEST_CASE("Mellin closed form") {
    CHECK(rel(mellin_closed(0.75, -0.5, false), 8.0 * std::sqrt(3.0) / 9.0) < 1e-14);
    // Gamma form: Gamma(1-s/a)Gamma(1+s/a) / (Gamma(1+s)Gamma(1-s)) * -sin(pi/a)/sin(pi(s+1)/a)
    for (double a : {0.6, 0.8}) {
        for (double s : {-0.5, -0.3}) {
            if (!(s > -a && s < a - 1)) continue;
            const double g = std::tgamma(1 - s / a) * std::tgamma(1 + s / a) / (std::tgamma(1 + s) * std::tgamma(1 - s));
            const double ref = g * -std::sin(kPi / a) / std::sin(kPi * (s + 1) / a);
            CHECK(rel(mellin_closed(a, s, false), ref) < 1e-13);
        }
    }
    CHECK(mellin_closed(1.0 / 3.0, -0.1, true) == 0.0);
    CHECK_THROWS_AS(mellin_closed(0.75, -0.2, false), StripError);
    CHECK_THROWS_AS(mellin_closed(0.3, -0.1, true), StripError);
    CHECK_THROWS_AS(mellin_closed(0.3, -0.2, false), ParameterError);
}

TEST_CASE("Mellin closed form of composites is the product") {
    const auto c = DensitySpec::composite({DensitySpec::beta_kernel(2.0, 3.0), DensitySpec::gamma_kernel(1.5)}, 1.0);
    REQUIRE(has_closed_mellin(c));
    const double s = 0.7;
    // E B^s E G^s
    const double b = std::tgamma(2 + s) * std::tgamma(5.0) / (std::tgamma(2.0) * std::tgamma(5 + s));
    const double g = std::tgamma(1.5 + s) / std::tgamma(1.5);
    CHECK(rel(mellin_closed_spec(c, s), b * g) < 1e-13);
}

TEST_CASE("multiplicative convolution") {
    // two unit exponentials: int e^{-t} e^{-x/t} dt/t = 2 K_0(2 sqrt x)
    const auto e = DensitySpec::gamma_kernel(1.0);
    for (double x : {0.1, 1.0, 5.0}) {
        CHECK(rel(mconv(e, e, x), 2.0 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(x))) < 1e-10);
    }
}

TEST_CASE("Laplace transform of g_alpha") {
    CHECK(rel(laplace_of_g(2.0 / 3.0, 1.7, false), 0.026244726715320919451) < 1e-9);  // mpmath
}

TEST_CASE("h-tilde polynomial") {
    for (double t : {0.1, 1.0, 3.0}) CHECK(std::fabs(htilde_poly(0.5, 0.5, t)) < 1e-15);
    // against (1-beta) f + t f' through h = sin(pi a) htilde / (pi Q^2)
    for (auto [a, b] : {std::pair{0.3, 0.2}, {0.7, 0.25}}) {
        for (double t : {0.05, 0.6, 2.0, 20.0}) {
            const double direct = (1 - b) * density_eval(DensitySpec::f_alpha(a), t) + t * f_alpha_prime(a, t);
            const double q = denominator(a, t);
            CHECK(rel(std::sin(kPi * a) * htilde_poly(a, b, t) / (kPi * q * q), direct) < 1e-12);
        }
    }
    // f' against a central difference
    const double h = 1e-5, a = 0.6, t = 1.3;
    const auto f = DensitySpec::f_alpha(a);
    CHECK(rel(f_alpha_prime(a, t), (density_eval(f, t + h) - density_eval(f, t - h)) / (2 * h)) < 1e-8);
}

TEST_CASE("polynomial minima") {
    CHECK(poly_nonneg(0.3, 0.3).min_value >= -1e-12);
    CHECK(poly_nonneg(0.7, 0.3).min_value >= -1e-12);
    CHECK(std::fabs(poly_nonneg(0.5, 0.5).min_value) < 1e-15);
    // beyond the proven range the polynomial goes negative
    CHECK(poly_nonneg(0.3, 0.6).min_value < 0.0);
}

TEST_CASE("cubic nonnegativity threshold") {
    const auto sq = lemma_threshold(1, 2, 1, 1);
    CHECK(sq.threshold == 1.0);
    CHECK(sq.holds);
    const auto below = lemma_threshold(0.99, 2, 1, 1);
    CHECK_FALSE(below.holds);
    CHECK(below.grid_min < 0.0);
    CHECK(std::fabs(below.grid_argmin - 1.0) < 0.05);
    const auto cubic = lemma_threshold(4, 3, 1, 2);  // (2t-1)^2 (t+1)
    CHECK(cubic.threshold == 4.0);
    CHECK(cubic.holds);
    CHECK_THROWS_AS(lemma_threshold(1, 0, 1, 1), DomainError);
}

TEST_CASE("sign properties of the catalog") {
    const auto ts = verify::Grid::logspace(1e-3, 1e3, 200).points;
    const auto neg = DensitySpec::hankel_bracket(0.7, 0.8);
    const auto pos = DensitySpec::hankel_bracket(0.3, 0.2);
    for (double t : ts) {
        CHECK(density_eval(neg, t) <= 0.0);
        CHECK(density_eval(pos, t) >= 0.0);
    }
    for (double a : {0.45, 0.3, 0.22, 0.18}) {
        const auto tf = DensitySpec::tilde_f_alpha(a);
        for (double t : ts) CHECK(density_eval(tf, t) >= 0.0);
    }
    for (double t : ts) CHECK(density_eval(DensitySpec::remark2_line3(), t) >= 0.0);
}

TEST_CASE("compose_bernstein shapes") {
    CHECK(compose_bernstein({0.7, 1.0}).kind == Kind::FAlpha);
    CHECK(compose_bernstein({0.5, 0.5}).kind == Kind::Zero);
    const auto c = compose_bernstein({1.5, 2.0});
    CHECK(c.kind == Kind::Composite);
    CHECK(verify::classify({1.5, 0.5}).tag == verify::Verdict::Neither);
    CHECK_THROWS_AS(compose_bernstein({1.5, 0.5}), RegionError);
}
