#pragma once

// Quadrature transforms of density specs, the alternating-difference
// complete-monotonicity check, the necktie classifier and the checks that
// tie series values to their integral representations.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "necktie/bernstein.hpp"
#include "necktie/mlcore.hpp"
#include "necktie/quadrature.hpp"

namespace necktie::verify {

struct Grid {
    std::vector<double> points;

    /// Throws ParameterError unless nonempty, finite, positive, strictly increasing.
    void validate() const;
    static Grid linspace(double lo, double hi, int count);
    static Grid logspace(double lo, double hi, int count);
};

struct QuadratureConfig {
    double abs_tol = 1e-300;
    double rel_tol = 1e-10;
    int max_refinements = 10;  ///< levels beyond 14 are clamped to 14
    /// gamma in f(t) ~ t^gamma at 0; the piece [0, 1] is then integrated
    /// in w = t^(1+gamma), which removes the power singularity.
    std::optional<double> endpoint_exponent_hint;

    /// Tolerances in (0, 1e-4], max_refinements in [3, 30], hint > -1.
    void validate() const;
    quadrature::Options options() const;
};

/// int_0^inf e^(-x t) spec(t) dt. Point masses, monomial sums and Beta
/// kernels are handled in closed form; a Beta kernel inside a composite is
/// integrated out through its Laplace transform 1F1(a; a+b; -y). Throws
/// DomainError for specs without a pointwise density (FactorizedH).
double laplace_quad(const bernstein::DensitySpec& spec, double x, const QuadratureConfig& cfg = {});

/// Same for many x; plain densities share one set of quadrature nodes.
std::vector<double> laplace_quad(const bernstein::DensitySpec& spec, std::span<const double> xs,
                                 const QuadratureConfig& cfg = {});

/// int_0^inf spec(t) / (s + t) dt for a pointwise spec, s > 0.
double stieltjes_quad(const bernstein::DensitySpec& spec, double s, const QuadratureConfig& cfg = {});

/// int_0^inf t^s spec(t) dt. Throws StripError outside the convergence strip.
double mellin_quad(const bernstein::DensitySpec& spec, double s, const QuadratureConfig& cfg = {});

/// int_0^x_max e^(-s x) fn(x) dx for a series-side function; the caller
/// picks x_max so that the truncated tail is negligible.
double numeric_laplace(const std::function<double(double)>& fn, double s, double x_max,
                       const QuadratureConfig& cfg = {});

enum class ClosedLaplace {
    DAlpha1,  ///< int e^(-sx) D_{a,1}(x) dx = (1 - s^(a-1)) / (s^a - 1)
    ThmBA,    ///< int e^(-sx) (e^x/a - E_a(x^a)) dx = 1/(a(s-1)) - s^(a-1)/(s^a - 1)
};

const char* to_string(ClosedLaplace which);

/// Closed forms above, with the removable singularity at s = 1 resolved.
double closed_laplace(ClosedLaplace which, double alpha, double s);

struct CmWitness {
    double x;
    int order;
    double violation;  ///< -(-1)^k Delta^k f / max |f| over the stencil
};

struct CmReport {
    int max_order_tested = 0;
    bool passed = true;
    std::optional<CmWitness> witness;  ///< first failure, present iff !passed
};

struct CmOptions {
    double step_fraction = 1e-2;  ///< h = max(step_fraction x, min_step)
    double min_step = 1e-3;
    /// Relative evaluation accuracy assumed for fn; order k tolerates
    /// noise 2^k max|f| on the stencil.
    double noise = 4e-12;
};

/// Forward differences of orders 0..order (<= 10) at each grid point;
/// passes iff (-1)^k Delta_h^k f(x) >= -tol_k everywhere.
CmReport cm_check(const std::function<double(double)>& fn, const Grid& grid, int order,
                  const CmOptions& opt = {});

enum class Verdict { DCm, DbarCm, ZeroFunction, Neither, NeitherOpenRegion };

const char* to_string(Verdict v);

struct NecktieVerdict {
    Verdict tag;
    bool boundary;  ///< on a closed edge of a region (few-ulp comparison)
};

NecktieVerdict classify(ml::AlphaBeta ab);

/// -D_{a,b}(x) from the Hankel bracket representation
/// x^(1-b)/pi int e^(-xt) bracket(t) dt; alpha and beta in (0, 2).
double dbar_hankel(ml::AlphaBeta ab, double x);

enum class WitnessSource { Window, SmallX, LargeX };

const char* to_string(WitnessSource s);

struct SignWitness {
    double x;
    double value;  ///< D(x) (negative for a D witness, positive for a Dbar witness)
    WitnessSource source;
};

struct WitnessPair {
    std::optional<SignWitness> d;     ///< point with D < 0
    std::optional<SignWitness> dbar;  ///< point with D > 0
};

/// Looks for both signs of D on a log grid over [1e-3, 50], then below
/// down to 1e-8 (series) and above up to 1e6 (Hankel representation).
WitnessPair find_sign_witnesses(ml::AlphaBeta ab);

struct ScanCell {
    double alpha;
    double beta;
    NecktieVerdict verdict;
    double min_d;  ///< over the sign-check grid on [0.05, 5]
    double max_d;
    WitnessPair witnesses;  ///< Neither cells only
    bool consistent;
};

/// Classifier against numeric signs on the grid alpha, beta = step k,
/// k = 1..count. Cells are processed on `threads` workers (0: hardware
/// concurrency); the result is in row-major (alpha, beta) order.
std::vector<ScanCell> necktie_scan(int count = 40, double step = 0.05, unsigned threads = 0);

struct CheckResult {
    double max_error = 0.0;
    double worst_x = 0.0;
};

/// Error of lhs against rhs on a grid: |l - r| / max(|r|, 1e-3 max|r|),
/// or |l - r| when rhs vanishes on the whole grid.
CheckResult compare(std::span<const double> xs, std::span<const double> lhs,
                    std::span<const double> rhs);

/// Closed identities. `param` is beta for D1beta, ThmB_alpha1, Dhalf and
/// E1beta_inc and is ignored otherwise. Names: D1beta, ThmB_alpha1, Dhalf,
/// Dbar21, Dbar41, Ehalf, E1beta_inc.
CheckResult verify_identity(std::string_view name, double param, const Grid& grid);

/// Series side against the Laplace transform of the matching density.
/// Names: b1 (D_{a,1}, FAlpha), b2 (Dbar_{a,1}, TAlpha), Exa, FHat, Eaxx,
/// UPow, SizeBias, ThmB_F, ThmB_LbF (beta >= 1), Bernstein (|D| against
/// compose_bernstein), Bracket (Hankel bracket), Remark2Line1, Remark2Line3.
/// Alpha-only names ignore ab.beta. Throws RegionError/DomainError where
/// no composable density exists.
CheckResult verify_representation(std::string_view name, ml::AlphaBeta ab, const Grid& grid,
                                  const QuadratureConfig& cfg = {});

const std::vector<std::string>& identity_names();
const std::vector<std::string>& representation_names();

}  // namespace necktie::verify
