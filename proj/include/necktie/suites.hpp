#pragma once

// The fixed verification suites behind `necktie verify all` and the
// acceptance binary. Each suite returns rows; a row passes iff
// error <= tolerance, and the CSV rendering is byte-stable.

#include <optional>
#include <string>
#include <vector>

#include "necktie/rng.hpp"

namespace necktie::suites {

struct Row {
    std::string check;
    std::string params;  ///< key=value pairs separated by ';'
    std::optional<double> x;
    std::optional<double> value;
    std::optional<double> reference;
    double error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<Row> rows;
    bool passed() const;
};

struct SuiteOptions {
    rng::Seed seed;
    std::size_t mc_n = 1000000;
    unsigned threads = 0;  ///< scan workers, 0 for hardware concurrency
};

SuiteResult identities(const SuiteOptions& opt);
SuiteResult representations(const SuiteOptions& opt);
SuiteResult mellin(const SuiteOptions& opt);
SuiteResult necktie_scan(const SuiteOptions& opt);
SuiteResult cm(const SuiteOptions& opt);
SuiteResult polynomials(const SuiteOptions& opt);
SuiteResult laplace(const SuiteOptions& opt);
SuiteResult monte_carlo(const SuiteOptions& opt);
SuiteResult factorization(const SuiteOptions& opt);

/// All suites above, in that order.
std::vector<SuiteResult> run_all(const SuiteOptions& opt);

/// Header suite,check,params,x,value,reference,error,tolerance,status.
/// Numbers use 17 significant digits; absent values are empty fields.
std::string to_csv(const std::vector<SuiteResult>& suites);

/// "%.17g", or "" for non-finite input.
std::string format_number(double v);

}  // namespace necktie::suites
