#pragma once

// Double-exponential quadrature: tanh-sinh on finite intervals and
// exp-sinh on half lines. Both tolerate integrable endpoint singularities.

#include <functional>
#include <span>
#include <vector>

namespace necktie::quadrature {

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_level = 9;  ///< step 2^-level; level 9 uses roughly 7000 nodes

    void validate() const;
};

struct Result {
    double value = 0.0;
    double error = 0.0;  ///< difference between the last two levels
    int evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// int_a^b f. Throws ConvergenceError when max_level is reached unconverged.
Result finite(const Integrand& f, double a, double b, const Options& opt = {});

/// int_a^inf f.
Result half_line(const Integrand& f, double a, const Options& opt = {});

/// int_a^b f(t) e^(-x t) dt for every x in xs (b may be +inf). The
/// integrand is sampled once per node and shared by all x; refinement
/// continues until every x has converged.
std::vector<Result> laplace_batch(const Integrand& f, double a, double b,
                                  std::span<const double> xs, const Options& opt = {});

}  // namespace necktie::quadrature
