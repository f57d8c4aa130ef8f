#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "necktie/error.hpp"
#include "necktie/montecarlo.hpp"

using namespace necktie;
using namespace necktie::mc;

namespace {

Estimate mean_of(const SampleBatch& b, double (*g)(double)) {
    std::vector<double> t(b.values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(b.values[i]);
    return mean_estimate(t);
}

void check_within(const Estimate& e, double ref, double sigmas = 5.0) {
    CHECK(std::fabs(e.estimate - ref) <= sigmas * e.std_error);
}

constexpr std::size_t kN = 200000;

}  // namespace

TEST_CASE("rational alpha") {
    CHECK(rational_alpha(2.0 / 3.0) == std::pair{2, 3});
    CHECK(rational_alpha(0.5) == std::pair{1, 2});
    CHECK(rational_alpha(7.0 / 12.0) == std::pair{7, 12});
    CHECK_THROWS_AS(rational_alpha(0.123456789), ParameterError);
    CHECK_THROWS_AS(rational_alpha(1.0 / 13.0), ParameterError);
}

TEST_CASE("XRational Mellin transform from its factors") {
    for (auto [p, q] : {std::pair{2, 3}, {3, 5}, {5, 7}, {1, 2}}) {
        const double a = double(p) / q;
        for (double s : {-0.3, 0.5, 1.0, 2.5}) {
            const double ref = std::tgamma(1 + s / a) * std::tgamma(a) / std::tgamma(a + s);
            CHECK(std::fabs(xrational_mellin(p, q, s) / ref - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("sampling is deterministic in the seed and stream") {
    const SamplerSpec spec{SamplerKind::YAlpha, {2.0 / 3.0}};
    const auto a = sample(spec, 1000, {42, 3});
    const auto b = sample(spec, 1000, {42, 3});
    const auto c = sample(spec, 1000, {42, 4});
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    for (double v : a.values) CHECK((std::isfinite(v) && v > 0.0));
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(SamplerSpec({SamplerKind::Stable, {1.0}}).validate(), ParameterError);
    CHECK_THROWS_AS(SamplerSpec({SamplerKind::Beta, {1.0}}).validate(), ParameterError);
    CHECK_THROWS_AS(SamplerSpec({SamplerKind::XRational, {3.0, 2.0}}).validate(), ParameterError);
    CHECK_THROWS_AS(SamplerSpec({SamplerKind::XRational, {1.5, 2.0}}).validate(), ParameterError);
    CHECK_THROWS_AS(SamplerSpec({SamplerKind::YAlpha, {0.31415926}}).validate(), ParameterError);
    CHECK_THROWS_AS(sample({SamplerKind::Gamma, {1.0}}, 0, {}), ParameterError);
}

TEST_CASE("moments of the elementary samplers") {
    check_within(mean_of(sample({SamplerKind::Beta, {2.0, 3.0}}, kN, {1, 0}), [](double v) { return v; }), 0.4);
    check_within(mean_of(sample({SamplerKind::Gamma, {2.5}}, kN, {1, 1}), [](double v) { return v; }), 2.5);
    check_within(mean_of(sample({SamplerKind::Gamma, {0.05}}, kN, {1, 2}), [](double v) { return v; }), 0.05);
    check_within(mean_of(sample({SamplerKind::UniformPow, {2.0}}, kN, {1, 3}), [](double v) { return v; }),
                 1.0 / 3.0);
    check_within(mean_of(sample({SamplerKind::XRational, {2.0, 3.0}}, kN, {1, 4}), [](double v) { return v; }),
                 std::tgamma(2.5) * std::tgamma(2.0 / 3.0) / std::tgamma(5.0 / 3.0));
    // E Z_a^-a = 1 / Gamma(1 + a)
    check_within(mean_of(sample({SamplerKind::MAlpha, {0.6}}, kN, {1, 5}), [](double v) { return v; }),
                 1.0 / std::tgamma(1.6));
}

TEST_CASE("Laplace transforms of stable and Mittag-Leffler samples") {
    const auto z = sample({SamplerKind::Stable, {0.5}}, kN, {7, 0});
    const auto ml = sample({SamplerKind::ML, {0.7}}, kN, {7, 1});
    for (double l : {0.1, 1.0, 5.0}) {
        check_within(empirical_laplace(z, l), std::exp(-std::sqrt(l)));
        check_within(empirical_laplace(ml, l), 1.0 / (1.0 + std::pow(l, 0.7)));
    }
    const auto one = sample({SamplerKind::ML, {1.0}}, kN, {7, 2});
    check_within(empirical_laplace(one, 2.0), 1.0 / 3.0);
}

TEST_CASE("mean estimate") {
    const std::vector<double> t{1.0, 2.0, 3.0, 4.0};
    const auto e = mean_estimate(t);
    CHECK(e.estimate == 2.5);
    CHECK(std::fabs(e.std_error - std::sqrt(5.0 / 12.0)) < 1e-15);
}

TEST_CASE("named Monte Carlo checks") {
    const std::vector<double> lambdas{0.5, 1.0, 2.0};
    McParams p;
    p.alpha = 0.5;
    CHECK(mc_verify("StableLT", p, 100000, {11, 0}, lambdas).passed());
    p.alpha = 0.6;
    CHECK(mc_verify("Pollard", p, 100000, {11, 1}, lambdas).passed());
    p.alpha = 1.5;
    p.beta = 2.0;
    CHECK(mc_verify("Sabb", p, 100000, {11, 2}, lambdas).passed());
    p = {};
    p.alpha = 0.5;
    p.sampler_shift = 0.2;
    CHECK_FALSE(mc_verify("StableLT", p, 100000, {11, 3}, lambdas).passed());
    CHECK_THROWS_AS(mc_verify("NoSuch", {}, 1000, {}, lambdas), ParameterError);
    CHECK(mc_names().size() == 12);
}
