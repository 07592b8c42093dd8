#pragma once

#include "friable/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace friable {

struct VerifyOptions {
    /// scale of the integer suites
    double x = 1e4;
    /// smoothness bound for buchstab; 0 picks 25
    double y = 0;
    /// buchstab depth; 0 picks the exact termination depth
    unsigned r = 0;
    u64 seed = 1;
    unsigned threads = 0;
    /// corrupt one term in every suite, to exercise the failure path
    bool sabotage = false;
    double tol = 1e-9;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    u64 cases = 0;
    std::string detail;
    /// smallest failing instance
    std::optional<std::string> counterexample;
    double seconds = 0;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

std::vector<SuiteResult> run_all(const VerifyOptions& opts);

} // namespace friable
