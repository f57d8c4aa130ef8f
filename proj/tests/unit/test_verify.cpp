#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "necktie/error.hpp"
#include "necktie/verify.hpp"

using namespace necktie;
using namespace necktie::verify;
using bernstein::DensitySpec;

namespace {
double rel(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }
}  // namespace

TEST_CASE("grids") {
    const auto g = Grid::linspace(0.1, 5.0, 50);
    CHECK(g.points.size() == 50);
    CHECK(g.points.front() == 0.1);
    CHECK(g.points.back() == 5.0);
    const auto l = Grid::logspace(1e-3, 1e3, 7);
    CHECK(std::fabs(l.points[3] - 1.0) < 1e-15);
    const Grid decreasing{{1.0, 0.5}}, zero{{0.0, 1.0}}, empty{};
    CHECK_THROWS_AS(decreasing.validate(), ParameterError);
    CHECK_THROWS_AS(zero.validate(), ParameterError);
    CHECK_THROWS_AS(empty.validate(), ParameterError);
}

TEST_CASE("quadrature config") {
    QuadratureConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 0.1;
    CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("Laplace transforms with closed forms") {
    CHECK(rel(laplace_quad(DensitySpec::point_mass(2.5), 0.4), std::exp(-1.0)) < 1e-15);
    for (double x : {0.2, 1.0, 6.0}) {
        CHECK(rel(laplace_quad(DensitySpec::gamma_kernel(1.7), x), std::pow(1 + x, -1.7)) < 1e-10);
        // beta-gamma algebra: B(2,3) G(5) is G(2)
        const auto bg = DensitySpec::composite({DensitySpec::beta_kernel(2, 3), DensitySpec::gamma_kernel(5)}, 1.0);
        CHECK(rel(laplace_quad(bg, x), std::pow(1 + x, -2.0)) < 1e-10);
    }
    CHECK(rel(laplace_quad(DensitySpec::beta_kernel(2, 3), 4.0), 0.26923036197926819418) < 1e-13);  // mpmath 1F1
    CHECK_THROWS_AS(laplace_quad(DensitySpec::factorized_h(0.7), 1.0), DomainError);
    CHECK_THROWS_AS(laplace_quad(DensitySpec::gamma_kernel(1), -1.0), DomainError);
}

TEST_CASE("batch and single Laplace agree") {
    const auto spec = DensitySpec::f_alpha(0.7);
    const std::vector<double> xs{0.3, 1.0, 3.0};
    const auto batch = laplace_quad(spec, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(rel(batch[i], laplace_quad(spec, xs[i])) < 1e-10);
}

TEST_CASE("Stieltjes transform of the Exa density") {
    // int t^{a-1} sin(pi a) / (pi Q (s+t)) dt = 1/(a(s-1)) - s^{a-1}/(s^a - 1)
    for (double a : {0.3, 0.6}) {
        for (double s : {0.5, 2.0, 5.0}) {
            const double ref = 1.0 / (a * (s - 1)) - std::pow(s, a - 1) / (std::pow(s, a) - 1);
            CHECK(rel(stieltjes_quad(DensitySpec::exa(a), s), ref) < 1e-8);
        }
    }
}

TEST_CASE("Mellin quadrature") {
    CHECK(rel(mellin_quad(DensitySpec::f_alpha(0.75), -0.5), 8.0 * std::sqrt(3.0) / 9.0) < 1e-9);
    CHECK_THROWS_AS(mellin_quad(DensitySpec::f_alpha(0.75), 0.0), StripError);
    // close to both strip edges, where t^s f decays like t^(-1.002)
    for (double s : {-0.598, -0.58, -0.42, -0.402}) {
        CHECK(rel(mellin_quad(DensitySpec::f_alpha(0.6), s), bernstein::mellin_closed(0.6, s, false)) < 1e-12);
    }
    CHECK(rel(mellin_quad(DensitySpec::gamma_kernel(2.5), 1.5), std::tgamma(4.0) / std::tgamma(2.5)) < 1e-10);
}

TEST_CASE("closed Laplace forms and the point s = 1") {
    for (double a : {0.3, 0.6, 1.5}) {
        CHECK(rel(closed_laplace(ClosedLaplace::DAlpha1, a, 1.0), (1 - a) / a) < 1e-15);
        CHECK(rel(closed_laplace(ClosedLaplace::ThmBA, a, 1.0), (1 - a) / (2 * a)) < 1e-15);
        // continuity across the switch to the expansion at |s - 1| = 1e-4
        const double in = closed_laplace(ClosedLaplace::ThmBA, a, 1.0 + 0.99e-4);
        const double out = closed_laplace(ClosedLaplace::ThmBA, a, 1.0 + 1.01e-4);
        CHECK(std::fabs(in - out) < 1e-5);
    }
    CHECK(closed_laplace(ClosedLaplace::DAlpha1, 1.0, 3.0) == 0.0);
    CHECK_THROWS_AS(closed_laplace(ClosedLaplace::DAlpha1, 0.5, 0.0), DomainError);
    const double q = numeric_laplace([](double x) { return ml::d_func({0.6, 1.0}, x); }, 2.0, 40.0);
    CHECK(rel(q, closed_laplace(ClosedLaplace::DAlpha1, 0.6, 2.0)) < 1e-8);
}

TEST_CASE("complete monotonicity check") {
    const auto g = Grid::linspace(0.2, 4.0, 12);
    CHECK(cm_check([](double x) { return std::exp(-x); }, g, 8).passed);
    CHECK(cm_check([](double x) { return 1.0 / (1.0 + x); }, g, 8).passed);
    const auto s = cm_check([](double x) { return std::sin(x); }, g, 8);
    REQUIRE_FALSE(s.passed);
    CHECK(s.witness->order == 1);
    CHECK_THROWS_AS(cm_check([](double x) { return x; }, g, 11), ParameterError);
}

TEST_CASE("the rescaled term-minus-F difference fails at alpha = 0.4") {
    const auto g = Grid::linspace(0.2, 4.0, 12);
    const auto f = [](double a) {
        return [a](double x) { return ml::thmb_diff({a, 1.0}, std::pow(x, 1.0 / a), ml::ThmB::TermMinusF); };
    };
    const auto r = cm_check(f(0.4), g, 8);
    REQUIRE_FALSE(r.passed);
    CHECK(r.witness->x == 0.2);
    CHECK(r.witness->order == 3);
    // third forward difference at h = 0.002 in 40-digit arithmetic (mpmath)
    CHECK(rel(r.witness->violation, 1.9306907562876094744e-8) < 1e-3);
    CHECK(cm_check(f(0.5), g, 8).passed);
    CHECK(cm_check(f(0.6), g, 8).passed);
}

TEST_CASE("classifier") {
    CHECK(classify({0.6, 0.7}).tag == Verdict::DCm);
    CHECK(classify({0.3, 0.2}).tag == Verdict::DbarCm);
    CHECK(classify({1.5, 2.0}).tag == Verdict::DbarCm);
    CHECK(classify({0.5, 0.5}).tag == Verdict::ZeroFunction);
    CHECK(classify({1.5, 0.5}).tag == Verdict::Neither);
    CHECK(classify({0.6, 0.6}).boundary);
    CHECK(classify({2.0, 1.0}).boundary);
    CHECK_FALSE(classify({0.6, 0.9}).boundary);
    // grid value 1 - 0.9 is not exactly 0.1
    CHECK(classify({0.9, 1.0 - 0.9}).tag == classify({0.9, 0.1}).tag);
}

TEST_CASE("Hankel representation of Dbar") {
    for (auto [a, b] : {std::pair{0.7, 0.5}, {1.5, 1.5}, {0.4, 1.2}}) {
        for (double x : {0.5, 2.0, 8.0}) CHECK(std::fabs(dbar_hankel({a, b}, x) - ml::dbar_func({a, b}, x)) < 1e-9);
    }
}

TEST_CASE("sign witnesses") {
    const auto w = find_sign_witnesses({1.5, 0.5});
    REQUIRE(w.d.has_value());
    REQUIRE(w.dbar.has_value());
    CHECK(ml::d_func({1.5, 0.5}, w.d->x) < 0.0);
    CHECK(w.dbar->value > 0.0);
}

TEST_CASE("small scan is consistent and independent of the thread count") {
    const auto one = necktie_scan(8, 0.25, 1);
    const auto four = necktie_scan(8, 0.25, 4);
    REQUIRE(one.size() == 64);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].consistent);
        CHECK(one[i].alpha == four[i].alpha);
        CHECK(one[i].beta == four[i].beta);
        CHECK(one[i].min_d == four[i].min_d);
        CHECK(one[i].verdict.tag == four[i].verdict.tag);
    }
}

TEST_CASE("compare") {
    const std::vector<double> xs{1, 2, 3};
    const auto r = compare(xs, std::vector<double>{1, 2, 3.3}, std::vector<double>{1, 2, 3});
    CHECK(std::fabs(r.max_error - 0.1) < 1e-12);
    CHECK(r.worst_x == 3);
    const auto z = compare(xs, std::vector<double>{0, 1e-12, 0}, std::vector<double>{0, 0, 0});
    CHECK(z.max_error == 1e-12);
}

TEST_CASE("named identities and representations") {
    const auto g = Grid::linspace(0.1, 5.0, 20);
    for (const auto& n : identity_names()) CHECK(verify_identity(n, 1.5, g).max_error < 1e-10);
    CHECK_THROWS_AS(verify_identity("NoSuch", 1.0, g), ParameterError);
    CHECK(verify_representation("b1", {0.75, 1.0}, g).max_error < 1e-6);
    CHECK(verify_representation("b2", {1.5, 1.0}, g).max_error < 1e-6);
    CHECK(verify_representation("Bernstein", {0.7, 1.4}, g).max_error < 1e-6);
    CHECK(verify_representation("Remark2Line3", {1.5, 1.5}, g).max_error < 1e-6);
    CHECK_THROWS_AS(verify_representation("Bernstein", {1.5, 0.5}, g), RegionError);
}
