#pragma once

// Batch verification suites. Each check sweeps n up to a bound and reports
// pass/fail with the first counterexample. Informational checks (the
// Krawtchouk eigenvector formula classification) never fail a run.

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "skac/rational.hpp"

namespace skac {

struct CheckResult {
    explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

    std::string name;
    bool mandatory = true;
    bool passed = true;
    long cases = 0;
    std::string detail;
    nlohmann::json info;  // informational payload, if any
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    /// True iff every mandatory check passed.
    bool passed() const;
    nlohmann::json to_json() const;
};

/// Rate pairs (alpha, beta) swept by the generator checks.
std::vector<std::pair<Rational, Rational>> default_rate_pairs();

/// Names accepted by run_suite, excluding "all".
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Throws
/// std::invalid_argument on an unknown name or max_n < 1.
VerificationReport run_suite(const std::string& name, long max_n);

CheckResult check_generator_eigenvalues(long max_n);
CheckResult check_generator_eigenvectors(long max_n);
CheckResult check_row_equations(long max_n);
CheckResult check_mode_sums(long max_n);
CheckResult check_equilibrium(long max_n);
CheckResult check_sylvester_kac(long max_n);
CheckResult check_mazza(long max_n);
CheckResult check_krawtchouk_charpoly(long max_n);
CheckResult check_transposition(long max_n);
CheckResult classify_krawtchouk_formula_vectors(long max_n);

}  // namespace skac
