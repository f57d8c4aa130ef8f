#pragma once

// Samplers for the positive random variables built from stable, Beta and
// Gamma laws, and Monte Carlo checks of Laplace-level identities.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "necktie/rng.hpp"

namespace necktie::mc {

using rng::Seed;

enum class SamplerKind {
    Stable,      ///< (alpha in (0,1)) Z_alpha, E exp(-l Z) = exp(-l^alpha)
    Beta,        ///< (a, b)
    Gamma,       ///< (c)
    UniformPow,  ///< (p) U^p
    XRational,   ///< (p, q), 1 <= p < q: Mellin transform Gamma(1+s/a)Gamma(a)/Gamma(a+s), a = p/q
    YAlpha,      ///< (alpha rational, q <= 12) Z_a X_a Gamma_{1/a}^{1/a}
    RatioPow,    ///< (gamma in (0,1]) (Z_g / Z'_g)^g
    WAlpha,      ///< (alpha in [1/2, 1)) (Z_{(1-a)/a} / Z_{1-a})^(1-a)
    ML,          ///< (alpha in (0,1]) L^(1/a) Z_a, E exp(-l X) = 1/(1 + l^a)
    MAlpha,      ///< (alpha in (0,1)) Z_a^-a
};

const char* to_string(SamplerKind kind);

struct SamplerSpec {
    SamplerKind kind;
    std::vector<double> params;

    /// Throws ParameterError when the parameters violate the kind's constraints.
    void validate() const;
};

struct SampleBatch {
    std::size_t n = 0;
    std::vector<double> values;
    Seed seed;
};

/// n i.i.d. draws (1 <= n <= 1e8), deterministic in (spec, n, seed).
SampleBatch sample(const SamplerSpec& spec, std::size_t n, Seed seed);

struct Estimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Mean of exp(-lambda v) over the batch with its standard error.
Estimate empirical_laplace(const SampleBatch& batch, double lambda);

/// Sample mean and standard error of arbitrary terms.
Estimate mean_estimate(std::span<const double> terms);

/// The pair (p, q) with alpha = p/q, q <= 12, or ParameterError.
std::pair<int, int> rational_alpha(double alpha);

/// E X_{p,q}^s from the Beta and Gamma factors of the sampler, s > -p/q.
double xrational_mellin(int p, int q, double s);

struct McRow {
    double lambda;
    double lhs;  ///< Monte Carlo side
    double rhs;  ///< deterministic side
    double std_error;
    double sigmas;  ///< |lhs - rhs| / std_error
    bool pass;
};

struct McReport {
    std::string name;
    std::vector<McRow> rows;
    bool passed() const;
};

struct McParams {
    double alpha = 0.5;
    double beta = 1.0;  ///< Sabb only
    /// Added to alpha in the sampler only; a nonzero shift is the
    /// sensitivity control and should fail.
    double sampler_shift = 0.0;
    double sigma_band = 4.0;
    double rel_floor = 0.0;  ///< band is max(sigma_band se, rel_floor |rhs|)
};

/// Names: StableLT, MLLT, ML2LT, Pollard, SizeBias, MABFactor, Sabb, Exx,
/// Eaxx, Prop1, XMean (alpha = p/q; lambdas ignored), Factor_daa.
McReport mc_verify(std::string_view name, const McParams& params, std::size_t n, Seed seed,
                   std::span<const double> lambdas);

const std::vector<std::string>& mc_names();

}  // namespace necktie::mc
