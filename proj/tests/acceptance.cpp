// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run through ctest or directly from the build tree.

#include <cstdio>

#include "symtoep/verify.hpp"

int main() {
    auto results = symtoep::verify::run_all();
    std::fputs(symtoep::verify::render_report(results).c_str(), stdout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    if (failures) std::fprintf(stdout, "%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
