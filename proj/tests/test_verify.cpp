// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "symtoep/verify.hpp"

using namespace symtoep;

TEST_CASE("table suite fails under a forced iteration cap") {
    verify::VerifyOptions opts;
    opts.maxit = 3;
    auto results = verify::run_tables_suite(opts);
    CHECK_FALSE(verify::all_passed(results));
    std::string report = verify::render_report(results);
    CHECK(report.find("FAIL") != std::string::npos);
}

TEST_CASE("theorem suite reports violations under a shrunk inclusion bound") {
    verify::VerifyOptions opts;
    opts.epsilon_scale = 0.1;
    auto results = verify::run_theorems_suite(opts);
    CHECK_FALSE(verify::all_passed(results));
    bool symeigs_failed = false;
    for (const auto& r : results)
        if (r.id == 2 && !r.passed) symeigs_failed = true;
    CHECK(symeigs_failed);
}

TEST_CASE("report rendering") {
    std::vector<verify::CriterionResult> r = {
        {1, "alpha", true, "fine", 0.1},
        {2, "beta", false, "broken", 0.2},
    };
    std::string text = verify::render_report(r);
    CHECK(text.find("PASS criterion 1") != std::string::npos);
    CHECK(text.find("FAIL criterion 2") != std::string::npos);
    std::string json = verify::render_json_report(r);
    CHECK(json.find("\"passed\": false") != std::string::npos);
    CHECK_FALSE(verify::all_passed(r));
}
