#pragma once

// Mittag-Leffler evaluation, the differential-difference operator L_beta
// and the scalar difference functions built from them.

#include "necktie/specfun.hpp"

namespace necktie::ml {

/// Validated parameter pair; both entries strictly positive and finite.
struct AlphaBeta {
    double alpha;
    double beta;

    AlphaBeta(double a, double b);
};

/// Series trust region. The bound applies to |z|^(1/alpha), the scale that
/// controls both the number of terms and the size of the largest term.
struct EvalDomain {
    double max_abs_arg = 60.0;

    void validate() const;  ///< max_abs_arg in (0, 80]
};

/// E_{alpha,beta}(z) for real z by the power series.
///
/// The sum is compensated. When the estimated rounding error of the double
/// evaluation exceeds 1e-13 relative (alternating cancellation for z < 0),
/// the series is re-summed in quad precision. Throws OutOfRangeError when
/// |z|^(1/alpha) exceeds the trust region or quad precision is not enough.
double ml(AlphaBeta ab, double z, const EvalDomain& dom = {});

/// E_alpha'(z) as the term-wise differentiated series.
double ml_deriv(double alpha, double z, const EvalDomain& dom = {});

/// F_{alpha,beta}(x) = E_{alpha,beta}(x^alpha), x >= 0.
double big_f(AlphaBeta ab, double x, const EvalDomain& dom = {});

/// L_beta F_{alpha,beta}(x) = x^(alpha-1) E_{alpha,alpha+beta-1}(x^alpha), x > 0.
double lb_big_f(AlphaBeta ab, double x, const EvalDomain& dom = {});

/// L_beta F_{alpha,beta} from the operator definition f' + (beta-1)(f(x)-f(0))/x,
/// with f' by a fourth-order central difference of step h. Cross-check only.
double lb_big_f_numeric(AlphaBeta ab, double x, double h, const EvalDomain& dom = {});

/// D_{alpha,beta}(x) = L_beta F - F, summed as one combined series so the
/// exponential parts cancel inside the extended-precision path. Exactly 0
/// for alpha = 1.
double d_func(AlphaBeta ab, double x, const EvalDomain& dom = {});

/// -D_{alpha,beta}(x).
double dbar_func(AlphaBeta ab, double x, const EvalDomain& dom = {});

/// The integer n with 1/(n+1) < alpha <= 1/n; alpha within two ulps of 1/n
/// counts as 1/n.
int n_alpha(double alpha);

/// D_{alpha,1-alpha} minus its leading monomials x^(alpha k - 1)/Gamma(alpha(k-1)),
/// k = 2 .. n_alpha - 1. Identically 0 when alpha = 1/n_alpha.
double tilde_d(double alpha, double x, const EvalDomain& dom = {});

/// x^(1-beta) e^x gamma(beta-1, x) / (alpha Gamma(beta-1)) for beta >= 1,
/// continuous at beta = 1 where it equals e^x / alpha.
double inc_term(AlphaBeta ab, double x);

enum class ThmB {
    FMinusTerm,    ///< F - term
    TermMinusF,    ///< term - F
    LbFMinusTerm,  ///< L_beta F - term
    TermMinusLbF,  ///< term - L_beta F
};

const char* to_string(ThmB which);

/// Signed difference between F (or L_beta F) and the incomplete-gamma term.
/// Exactly 0 for alpha = 1.
double thmb_diff(AlphaBeta ab, double x, ThmB which, const EvalDomain& dom = {});

/// First n orders of the large-x expansion of F - term:
/// sum_k x^-k / (alpha Gamma(beta-k)) - x^(-alpha k) / Gamma(beta - alpha k).
double tail_expansion(AlphaBeta ab, double x, int n);

}  // namespace necktie::ml
