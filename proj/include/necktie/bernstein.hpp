#pragma once

// Catalog of Bernstein densities and signed integrands, their Mellin
// transforms, multiplicative convolution and the positive stable density.

#include <string>
#include <vector>

#include "necktie/mlcore.hpp"
#include "necktie/quadrature.hpp"

namespace necktie::bernstein {

enum class Kind {
    FAlpha,          // (alpha) sin(pi a) t^(a-1)(1+t) / (pi Q)
    FHat,            // (alpha) sin(pi a) t^a / (pi Q)
    ExaDensity,      // (alpha) sin(pi a) t^(a-1) / (pi Q)
    TAlpha,          // (alpha) -sin(pi a) t^(a-1)(1+t) / (pi Q), a in (1,2)
    EaxxDensity,     // (alpha) -sin(pi a) t^(a-1) / (pi Q), a in (1,2)
    UPowDensity,     // (alpha) -a sin(pi a) t^(a-1) / (pi (a-1) Q)
    UPowSizeBias,    // (alpha) -a sin(pi a) t^a / (pi Q)
    TildeFAlpha,     // (alpha) Chebyshev-corrected f for a in (0, 1/2)
    HAlphaBeta,      // (alpha, beta) (1-beta) f_a + t f_a'
    HankelBracket,   // (alpha, beta) signed bracket of the Hankel representation
    GAlpha,          // (alpha) (1-a) t^-a exp(-t^-a) / Gamma(2 - 1/a)
    TildeGAlpha,     // (alpha) (1-n a) t^(-n a) exp(-t^-a) / Gamma(n + 1 - 1/a)
    Remark2Line1,    // (1 - t^2) / (sqrt(t)(t^3 + 1))
    Remark2Line3,    // 2/sqrt(3 pi) Re sqrt(e^(i pi/3) - t) / sqrt(t^2 - t + 1)
    MonomialSum,     // sum_k c_k t^(-g_k); params = c_1, g_1, c_2, g_2, ...
    BetaKernel,      // (a, b) Beta(a, b) density on (0, 1)
    GammaKernel,     // (c) Gamma(c, 1) density
    StableDensity,   // (alpha) density of the positive alpha-stable law
    FactorizedH,     // (alpha) h_a of the factorization f_a = f_B(a,1-a) (.) h_a; symbolic
    FactorizedHTilde,  // (alpha) tilde h_a with tilde f_a = f_B(1-a,a) (.) tilde h_a; symbolic
    PointMass,       // (c) unit mass at c
    Zero,
    Composite,       // prefactor * (factors[0] (.) factors[1] (.) ...)
    Sum,             // prefactor * (factors[0] + factors[1] + ...)
};

enum class Normalization { Probability, SigmaFinite, Signed };

struct Support {
    double lo = 0.0;
    double hi = 0.0;  // +inf for half lines
};

/// Open interval of exponents s with int t^s |f(t)| dt finite.
struct MellinStrip {
    double lo;
    double hi;

    bool contains(double s) const { return s > lo && s < hi; }
};

/// Immutable descriptor of a density. Construct through the factories,
/// which validate the parameter constraints of each kind.
struct DensitySpec {
    Kind kind = Kind::Zero;
    std::vector<double> params;
    Support support;
    Normalization normalization = Normalization::Signed;
    double prefactor = 1.0;               // Composite and Sum only
    std::vector<DensitySpec> factors;     // Composite and Sum only

    static DensitySpec f_alpha(double alpha);
    static DensitySpec f_hat(double alpha);
    static DensitySpec exa(double alpha);
    static DensitySpec t_alpha(double alpha);  ///< alpha = 2 gives PointMass(1)
    static DensitySpec eaxx(double alpha);
    static DensitySpec upow(double alpha);
    static DensitySpec upow_size_bias(double alpha);
    static DensitySpec tilde_f_alpha(double alpha);
    static DensitySpec h_alpha_beta(double alpha, double beta);
    static DensitySpec hankel_bracket(double alpha, double beta);
    static DensitySpec g_alpha(double alpha);
    static DensitySpec tilde_g_alpha(double alpha);
    static DensitySpec remark2_line1();
    static DensitySpec remark2_line3();
    static DensitySpec monomial_sum(std::vector<double> coeffs, std::vector<double> exponents);
    static DensitySpec beta_kernel(double a, double b);
    static DensitySpec gamma_kernel(double c);
    static DensitySpec stable(double alpha);
    static DensitySpec factorized_h(double alpha);
    static DensitySpec factorized_h_tilde(double alpha);
    static DensitySpec point_mass(double at);
    static DensitySpec zero();
    static DensitySpec composite(std::vector<DensitySpec> factors, double prefactor);
    static DensitySpec sum(std::vector<DensitySpec> terms, double prefactor = 1.0);

    /// False for symbolic kinds (point masses, factorized h) and for
    /// composites containing one.
    bool pointwise() const;

    std::string describe() const;
};

const char* to_string(Kind kind);

/// Pointwise value. Throws DomainError off the support or for kinds
/// without a pointwise density.
double density_eval(const DensitySpec& spec, double t);

/// (t^a - cos(pi a))^2 + sin^2(pi a), the common denominator.
double denominator(double alpha, double t);

/// Analytic derivative of FAlpha.
double f_alpha_prime(double alpha, double t);

/// Numerator polynomial of h_{alpha,beta}:
/// (1-a-b) t^3a - 2(1-b) c t^2a + (1+a-b) t^a - (a+b) t^(3a-1) + 2 b c t^(2a-1) + (a-b) t^(a-1),
/// c = cos(pi a), so that h = sin(pi a) htilde / (pi Q^2).
double htilde_poly(double alpha, double beta, double t);

struct PolyMin {
    double min_value;
    double argmin;
};

/// Minimum of htilde_poly over 4096 log-spaced points in [1e-6, 1e6],
/// refined by golden-section search around the best grid point.
PolyMin poly_nonneg(double alpha, double beta);

struct ThresholdReport {
    bool holds;
    double threshold;  ///< (rho/c)^rho (b/(1+rho))^(1+rho)
    double grid_min;   ///< min of a t^(1+rho) - b t + c on a log grid
    double grid_argmin;
};

/// a t^(1+rho) - b t + c >= 0 for all t > 0 iff a >= threshold.
ThresholdReport lemma_threshold(double a, double b, double c, double rho);

/// Closed-form Mellin transform (t^s convention) of FAlpha (tilde = false,
/// alpha in (1/2, 1)) or TildeFAlpha (tilde = true, alpha in (0, 1/2)).
/// Throws StripError outside the strip.
double mellin_closed(double alpha, double s, bool tilde);

/// Convergence strip of a spec; Zero and PointMass return the whole line.
MellinStrip mellin_strip(const DensitySpec& spec);

/// Closed-form Mellin transform where one is known (including products
/// for Composite). Throws DomainError for kinds without one.
double mellin_closed_spec(const DensitySpec& spec, double s);
bool has_closed_mellin(const DensitySpec& spec);

/// (f (.) g)(x) = int f(t) g(x/t) dt/t over the intersection of supports.
double mconv(const DensitySpec& f, const DensitySpec& g, double x,
             const quadrature::Options& opt = {});

/// Density of Z_alpha, E exp(-lambda Z) = exp(-lambda^alpha), from the
/// single-integral representation over (0, pi).
double stable_density(double alpha, double x);

/// int_0^inf e^(-u t) g(t) dt for GAlpha (tilde = false, alpha in (1/2, 1))
/// or TildeGAlpha (tilde = true, alpha in (0, 1/2) not a reciprocal integer).
double laplace_of_g(double alpha, double u, bool tilde);

/// Symbolic Bernstein density of |D_{alpha,beta}|. Throws RegionError when
/// (alpha, beta) has no complete-monotonicity claim.
DensitySpec compose_bernstein(ml::AlphaBeta ab);

/// Bernstein density of the exponential-term difference `which`, oriented so that
/// it is the completely monotone one of the pair for the given alpha.
/// alpha in (0,1) uses TermMinusF / LbFMinusTerm, alpha in (1,2) uses
/// FMinusTerm / TermMinusLbF; anything else throws RegionError.
DensitySpec thmb_bernstein(ml::AlphaBeta ab, ml::ThmB which);

}  // namespace necktie::bernstein
