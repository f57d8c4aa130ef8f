#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace necktie {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested evaluation lies outside the region where the evaluator can
/// guarantee its stated accuracy.
class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Parameter constraint of a density kind or sampler violated.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mellin exponent outside the convergence strip.
class StripError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// (alpha, beta) carries no complete-monotonicity claim.
class RegionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate, double error)
        : std::runtime_error(what + " (estimate " + format(estimate) + ", error " +
                             format(error) + ")"),
          estimate_(estimate),
          error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    double estimate_;
    double error_;
};

}  // namespace necktie
