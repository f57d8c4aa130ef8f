#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference in
// namespace `scalar`; vector variants are selected once at run time.

#include <cstddef>
#include <span>

namespace necktie::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa);

/// Best instruction set compiled in and supported by this CPU. The
/// environment variable NECKTIE_SIMD=scalar forces the reference path.
Isa detected_isa();

/// Instruction set used by the dispatching entry points below.
Isa active_isa();

/// Override the dispatch (tests and benchmarks). Throws ParameterError if
/// the requested set is not available.
void set_active_isa(Isa isa);

struct ExpMoments {
    double sum1 = 0.0;  ///< sum_i exp(-lambda v_i)
    double sum2 = 0.0;  ///< sum_i exp(-2 lambda v_i)
};

/// sum_i c_i exp(-x t_i). Requires c.size() == t.size(), x t_i >= 0.
double weighted_exp_sum(std::span<const double> c, std::span<const double> t, double x);

/// First two moments of exp(-lambda v) over a sample; lambda, v_i >= 0.
ExpMoments exp_moments(std::span<const double> v, double lambda);

namespace scalar {
double weighted_exp_sum(const double* c, const double* t, std::size_t n, double x);
ExpMoments exp_moments(const double* v, std::size_t n, double lambda);
}  // namespace scalar

namespace avx2 {
bool available();
double weighted_exp_sum(const double* c, const double* t, std::size_t n, double x);
ExpMoments exp_moments(const double* v, std::size_t n, double lambda);
}  // namespace avx2

namespace neon {
bool available();
double weighted_exp_sum(const double* c, const double* t, std::size_t n, double x);
ExpMoments exp_moments(const double* v, std::size_t n, double lambda);
}  // namespace neon

}  // namespace necktie::simd
