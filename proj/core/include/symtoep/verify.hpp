// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "symtoep/types.hpp"

namespace symtoep::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    int maxit = 200;            // iteration cap for the table reproductions
    double epsilon_scale = 1.0; // fault-injection hook for the inclusion bounds
};

/// Spectral certificates: inclusion-bound table, eigenvalue inclusions,
/// convergence of the absolute-value Strang circulant, the generalized
/// eigenvalue lemma, and the structural property fuzz suite.
std::vector<CriterionResult> run_theorems_suite(const VerifyOptions& opts = {});

/// Iteration-count reproductions of the benchmark tables.
std::vector<CriterionResult> run_tables_suite(const VerifyOptions& opts = {});

std::vector<CriterionResult> run_all(const VerifyOptions& opts = {});

/// One "PASS/FAIL criterion <id>: <name> (<detail>)" line per result.
std::string render_report(const std::vector<CriterionResult>& results);
/// Structured JSON report.
std::string render_json_report(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace symtoep::verify
