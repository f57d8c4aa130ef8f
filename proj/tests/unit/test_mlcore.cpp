#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "necktie/error.hpp"
#include "necktie/mlcore.hpp"

using namespace necktie;
using namespace necktie::ml;

namespace {
double rel(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }
}  // namespace

// Reference values marked mpmath come from tests/oracles/mp_values.py.

TEST_CASE("elementary cases of E") {
    for (double x : {0.1, 0.7, 1.0, 3.0, 6.0}) {
        CHECK(rel(ml::ml({1.0, 1.0}, x), std::exp(x)) < 1e-14);
        CHECK(rel(ml::ml({1.0, 1.0}, -x), std::exp(-x)) < 1e-12);
        CHECK(rel(big_f({2.0, 1.0}, x), std::cosh(x)) < 1e-14);
        CHECK(rel(big_f({2.0, 2.0}, x), std::sinh(x) / x) < 1e-14);
        // E_{1/2}(z) = exp(z^2) erfc(-z)
        CHECK(rel(ml::ml({0.5, 1.0}, x), std::exp(x * x) * std::erfc(-x)) < 1e-13);
        CHECK(rel(ml::ml({0.5, 1.0}, -x), std::exp(x * x) * std::erfc(x)) < 1e-11);
    }
    CHECK(rel(ml::ml({0.5, 1.0}, -5.0), std::exp(25.0) * std::erfc(5.0)) < 1e-11);
    // 21 cancelled digits at z = -7 are more than quad precision can carry
    CHECK_THROWS_AS(ml::ml({0.5, 1.0}, -7.0), OutOfRangeError);
}

TEST_CASE("E against mpmath") {
    CHECK(rel(ml::ml({0.6, 1.0}, -2.0), 0.23557103111182496885) < 1e-13);
    CHECK(rel(ml::ml({0.6, 1.0}, 5.0), 3726255.100230058277) < 1e-13);
    CHECK(rel(ml::ml({1.5, 0.7}, 3.0), 6.7123095218026811984) < 1e-13);
    CHECK(rel(ml::ml({0.3, 0.8}, -2.0), 0.2265520516206396403) < 1e-12);
}

TEST_CASE("trust region") {
    CHECK_THROWS_AS(ml::ml({0.5, 1.0}, -40.0), OutOfRangeError);
    EvalDomain wide{80.0};
    CHECK_NOTHROW(ml::ml({1.0, 1.0}, 70.0, wide));
    EvalDomain bad{100.0};
    CHECK_THROWS_AS(bad.validate(), ParameterError);
    CHECK_THROWS_AS(AlphaBeta(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(AlphaBeta(1.0, -1.0), DomainError);
}

TEST_CASE("derivative of E_alpha") {
    // E_1' = exp; E_alpha'(z) = E_{alpha,alpha}(z) / alpha
    CHECK(rel(ml_deriv(1.0, 0.8), std::exp(0.8)) < 1e-14);
    for (double a : {0.4, 0.75, 1.6}) {
        for (double z : {-2.0, 0.5, 3.0}) CHECK(rel(ml_deriv(a, z), ml::ml({a, a}, z) / a) < 1e-12);
    }
}

TEST_CASE("L_beta F closed form against the operator definition") {
    for (auto [a, b] : {std::pair{0.6, 1.0}, {0.7, 1.4}, {1.5, 2.0}, {0.3, 0.5}}) {
        for (double x : {0.3, 1.0, 2.5}) {
            CHECK(rel(lb_big_f({a, b}, x), lb_big_f_numeric({a, b}, x, 1e-3)) < 1e-8);
        }
    }
}

TEST_CASE("D and Dbar against mpmath") {
    CHECK(rel(d_func({0.7, 1.0}, 1.0), 0.2466321852705095705) < 1e-12);
    CHECK(rel(d_func({0.3, 0.2}, 2.0), -0.30631550047904751546) < 1e-12);
    CHECK(rel(d_func({1.5, 2.0}, 0.5), -0.53642704895239182188) < 1e-12);
    CHECK(rel(d_func({0.7, 0.5}, 3.0), -0.014083614837954511705) < 1e-10);
    CHECK(dbar_func({1.5, 2.0}, 0.5) == -d_func({1.5, 2.0}, 0.5));
}

TEST_CASE("D special lines") {
    for (double x : {0.2, 1.0, 4.0}) {
        CHECK(d_func({1.0, 0.7}, x) == 0.0);
        CHECK(d_func({0.5, 0.5}, x) == 0.0);
        CHECK(rel(dbar_func({2.0, 1.0}, x), std::exp(-x)) < 1e-12);
        CHECK(rel(d_func({0.5, 1.0}, x), 1.0 / std::sqrt(std::numbers::pi * x)) < 1e-12);
    }
}

TEST_CASE("D stays accurate where e^x dominates") {
    // D_{0.7,1} decays while both F and L_beta F grow like e^x.
    CHECK(rel(d_func({0.7, 1.0}, 30.0), 0.029333670996653241654) < 1e-9);  // mpmath
}

TEST_CASE("n_alpha") {
    CHECK(n_alpha(0.5) == 2);
    CHECK(n_alpha(0.3) == 3);
    CHECK(n_alpha(1.0 / 3.0) == 3);
    CHECK(n_alpha(0.34) == 2);
    CHECK(n_alpha(0.9) == 1);
}

TEST_CASE("tilde D") {
    CHECK(rel(tilde_d(0.3, 1.0), 0.18875341963364034133) < 1e-12);
    for (double x : {0.5, 2.0}) CHECK(std::fabs(tilde_d(1.0 / 3.0, x)) < 1e-12);
}

TEST_CASE("incomplete-gamma term and the differences against it") {
    CHECK(rel(inc_term({1.5, 2.0}, 1.2), 1.2889538459647485711) < 1e-13);
    CHECK(rel(inc_term({0.6, 1.0}, 2.0), std::exp(2.0) / 0.6) < 1e-15);
    CHECK_THROWS_AS(inc_term({0.6, 0.8}, 1.0), DomainError);
    CHECK(rel(thmb_diff({1.5, 1.5}, 2.0, ThmB::FMinusTerm), 0.13336396849458571112) < 1e-11);
    CHECK(rel(thmb_diff({0.6, 1.0}, 1.3, ThmB::TermMinusF), 0.25643327974177618175) < 1e-11);
    CHECK(rel(thmb_diff({0.6, 2.0}, 0.7, ThmB::LbFMinusTerm), 0.4994360785212567297) < 1e-11);
    CHECK(thmb_diff({1.0, 1.5}, 0.8, ThmB::TermMinusLbF) == 0.0);
    CHECK(thmb_diff({0.6, 1.0}, 1.3, ThmB::FMinusTerm) == -thmb_diff({0.6, 1.0}, 1.3, ThmB::TermMinusF));
}

TEST_CASE("large-x expansion of F - term") {
    // The truncated expansion converges to the series value as x grows.
    const AlphaBeta ab{1.5, 1.5};
    const double x = 25.0;
    const double exact = thmb_diff(ab, x, ThmB::FMinusTerm);
    CHECK(rel(tail_expansion(ab, x, 6), exact) < 1e-5);
    CHECK(std::fabs(tail_expansion(ab, x, 6) - exact) < std::fabs(tail_expansion(ab, x, 1) - exact));
}
