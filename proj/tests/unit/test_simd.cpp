#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "necktie/error.hpp"
#include "necktie/simd/kernels.hpp"

using namespace necktie;
using namespace necktie::simd;

namespace {

struct Data {
    std::vector<double> c, t;
};

Data make(std::size_t n, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        d.c.push_back(u(eng) - 0.3);
        d.t.push_back(-std::log(u(eng) + 1e-300) * 3.0);
    }
    return d;
}

double naive_sum(const Data& d, double x) {
    long double s = 0;
    for (std::size_t i = 0; i < d.c.size(); ++i) s += d.c[i] * std::exp(-x * d.t[i]);
    return static_cast<double>(s);
}

}  // namespace

TEST_CASE("scalar reference against a long double loop") {
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 1000u}) {
        const auto d = make(n, 7 + n);
        for (double x : {0.0, 0.3, 2.0}) {
            const double ref = naive_sum(d, x);
            CHECK(std::fabs(scalar::weighted_exp_sum(d.c.data(), d.t.data(), n, x) - ref) <= 1e-12 * (1.0 + n));
        }
    }
}

TEST_CASE("vector variants agree with the scalar reference") {
    for (std::size_t n : {1u, 2u, 5u, 8u, 13u, 4096u, 100001u}) {
        const auto d = make(n, 11 + n);
        for (double x : {0.0, 0.5, 4.0}) {
            const double s = scalar::weighted_exp_sum(d.c.data(), d.t.data(), n, x);
            const auto m = scalar::exp_moments(d.t.data(), n, x);
            const double scale = 1e-13 * static_cast<double>(n);
            if (avx2::available()) {
                CHECK(std::fabs(avx2::weighted_exp_sum(d.c.data(), d.t.data(), n, x) - s) <= scale);
                const auto v = avx2::exp_moments(d.t.data(), n, x);
                CHECK(std::fabs(v.sum1 - m.sum1) <= scale);
                CHECK(std::fabs(v.sum2 - m.sum2) <= scale);
            }
            if (neon::available()) {
                CHECK(std::fabs(neon::weighted_exp_sum(d.c.data(), d.t.data(), n, x) - s) <= scale);
                const auto v = neon::exp_moments(d.t.data(), n, x);
                CHECK(std::fabs(v.sum1 - m.sum1) <= scale);
                CHECK(std::fabs(v.sum2 - m.sum2) <= scale);
            }
        }
    }
}

TEST_CASE("dispatch") {
    const Isa best = detected_isa();
    CHECK(std::string(to_string(best)).size() > 0);
    set_active_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    const auto d = make(100, 3);
    const double s = weighted_exp_sum(d.c, d.t, 1.0);
    set_active_isa(best);
    CHECK(std::fabs(weighted_exp_sum(d.c, d.t, 1.0) - s) < 1e-12);
    if (!neon::available()) CHECK_THROWS_AS(set_active_isa(Isa::Neon), ParameterError);
}

TEST_CASE("moments of a constant sample") {
    const std::vector<double> v(37, 2.0);
    const auto m = exp_moments(v, 0.5);
    CHECK(std::fabs(m.sum1 - 37.0 * std::exp(-1.0)) < 1e-12);
    CHECK(std::fabs(m.sum2 - 37.0 * std::exp(-2.0)) < 1e-12);
}
