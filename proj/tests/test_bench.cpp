// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symtoep/bench.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/spectral.hpp"

using namespace symtoep;
using namespace symtoep::bench;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("incompatible configurations fail before any compute") {
    RunConfig cfg;
    cfg.example = 1;
    cfg.sizes = {64};
    cfg.solver = Solver::minres;
    cfg.precond = Precond::circ_strang;
    CHECK_THROWS_AS(run(cfg), ConfigError);
    cfg.precond = Precond::mg_a;
    CHECK_THROWS_AS(run(cfg), ConfigError);
    cfg.solver = Solver::gmres;
    cfg.precond = Precond::block_circ;
    CHECK_THROWS_AS(run(cfg), ConfigError);
    cfg.sizes = {};
    cfg.precond = Precond::none;
    CHECK_THROWS_AS(run(cfg), ConfigError);
}

TEST_CASE("name round trips") {
    for (auto p : {Precond::none, Precond::ar, Precond::am_exact, Precond::am_banded,
                   Precond::circ_strang, Precond::circ_abs_superoptimal, Precond::block_circ,
                   Precond::mg_ar})
        CHECK(precond_from_string(to_string(p)) == p);
    for (auto s : {Solver::minres, Solver::gmres, Solver::lsqr})
        CHECK(solver_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(precond_from_string("bogus"), ConfigError);
}

TEST_CASE("runs are deterministic and rows are size-major") {
    RunConfig cfg;
    cfg.example = 1;
    cfg.sizes = {127, 255};
    cfg.solver = Solver::minres;
    cfg.precond = Precond::ar;
    cfg.seed = 99;
    auto rows1 = run(cfg);
    auto rows2 = run(cfg);
    REQUIRE(rows1.size() == 2);
    CHECK(rows1[0].n == 127);
    CHECK(rows1[1].n == 255);
    CHECK(rows1[0].iterations == rows2[0].iterations);
    CHECK(rows1[1].iterations == rows2[1].iterations);
    CHECK(rows1[0].converged);
}

TEST_CASE("worker pool preserves order and results") {
    RunConfig cfg;
    cfg.example = 2;
    cfg.sizes = {127, 255, 511};
    cfg.solver = Solver::gmres;
    cfg.precond = Precond::circ_strang;
    auto serial = run(cfg);
    setenv("SYMTOEP_THREADS", "3", 1);
    auto parallel = run(cfg);
    unsetenv("SYMTOEP_THREADS");
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(parallel[i].n == serial[i].n);
        CHECK(parallel[i].iterations == serial[i].iterations);
        CHECK(parallel[i].final_relres == serial[i].final_relres);
    }
}

TEST_CASE("lsqr cost accounting") {
    RunConfig cfg;
    cfg.example = 2;
    cfg.sizes = {127};
    cfg.solver = Solver::lsqr;
    cfg.precond = Precond::circ_strang;
    auto rows = run(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].operator_applications == 2 * rows[0].iterations);
}

TEST_CASE("maxit rows render as dashes") {
    RunConfig cfg;
    cfg.example = 1;
    cfg.sizes = {255};
    cfg.solver = Solver::minres;
    cfg.precond = Precond::none;
    cfg.maxit = 3;
    auto rows = run(cfg);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].converged);
    CHECK(rows[0].iterations == 3);
    std::string table = render_table(rows);
    CHECK(table.find("---") != std::string::npos);
}

TEST_CASE("csv and json round trips are exact") {
    RunConfig cfg;
    cfg.example = 2;
    cfg.sizes = {127, 255};
    cfg.alpha = 1.25;
    cfg.solver = Solver::gmres;
    cfg.precond = Precond::circ_strang;
    auto rows = run(cfg);

    auto csv_back = from_csv(to_csv(rows));
    REQUIRE(csv_back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(csv_back[i] == rows[i]);

    auto json_back = from_json_lines(to_json_lines(rows));
    REQUIRE(json_back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(json_back[i] == rows[i]);
}

TEST_CASE("reference iteration counts") {
    // iteration-count targets beyond the ones in the acceptance suite;
    // tolerances carry the random-rhs slack
    SUBCASE("gmres with the tridiagonal preconditioner") {
        RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {2047};
        cfg.solver = Solver::gmres;
        cfg.precond = Precond::ar;
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 61);  // 68 +- 10%
        CHECK(rows[0].iterations <= 75);
    }
    SUBCASE("lsqr with the tridiagonal preconditioner") {
        RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {2047};
        cfg.solver = Solver::lsqr;
        cfg.precond = Precond::ar;
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 60);  // 67 +- 10%
        CHECK(rows[0].iterations <= 74);
    }
    SUBCASE("gmres with the strang circulant on the fractional problem") {
        RunConfig cfg;
        cfg.example = 2;
        cfg.sizes = {4095};
        cfg.alpha = 1.5;
        cfg.solver = Solver::gmres;
        cfg.precond = Precond::circ_strang;
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 5);  // 6 +- 1
        CHECK(rows[0].iterations <= 7);
    }
    SUBCASE("minres with the absolute-value strang circulant") {
        RunConfig cfg;
        cfg.example = 2;
        cfg.sizes = {4095};
        cfg.alpha = 1.25;
        cfg.solver = Solver::minres;
        cfg.precond = Precond::circ_abs_strang;
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 9);  // 10 +- 1
        CHECK(rows[0].iterations <= 11);
    }
    SUBCASE("lsqr with the multigrid preconditioner on the fractional problem") {
        RunConfig cfg;
        cfg.example = 2;
        cfg.sizes = {16383};
        cfg.alpha = 1.25;
        cfg.solver = Solver::lsqr;
        cfg.precond = Precond::mg_a;
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 6);  // 7 +- 1
        CHECK(rows[0].iterations <= 8);
    }
    SUBCASE("minres with multigrid on the symmetric part") {
        RunConfig cfg;
        cfg.example = 2;
        cfg.sizes = {1023};
        cfg.alpha = 1.5;
        cfg.solver = Solver::minres;
        cfg.precond = Precond::mg_ar;
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 6);  // 8 +- 2
        CHECK(rows[0].iterations <= 10);
    }
    SUBCASE("2d multigrid with the symmetric part") {
        RunConfig cfg;
        cfg.example = 3;
        cfg.sizes = {31};
        cfg.alpha = 1.5;
        cfg.beta = 1.75;
        cfg.solver = Solver::minres;
        cfg.precond = Precond::mg_ar;
        cfg.tol_mode = ToleranceMode::relative;  // the 2D reference counts are r0-relative
        auto rows = run(cfg);
        CHECK(rows[0].converged);
        CHECK(rows[0].iterations >= 8);  // 10 +- 2
        CHECK(rows[0].iterations <= 12);
    }
}

TEST_CASE("spectrum export") {
    SUBCASE("tridiagonal-preconditioned symmetrized spectrum") {
        RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {512};
        cfg.solver = Solver::minres;
        cfg.precond = Precond::ar;
        auto path = temp_file("symtoep_spec_sym.txt");
        export_spectrum(cfg, SpectrumTarget::symmetrized, path);
        std::ifstream is(path);
        REQUIRE(is.good());
        std::string line;
        int count = 0;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            double re, im;
            ls >> re >> im;
            CHECK(std::abs(re) >= 1 - 1e-8);
            CHECK(im == 0.0);
            ++count;
        }
        CHECK(count == 512);
        std::filesystem::remove(path);
    }

    SUBCASE("exact modulus preconditioner clusters the symmetrized spectrum") {
        RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {512};
        cfg.solver = Solver::minres;
        cfg.precond = Precond::am_exact;
        auto path = temp_file("symtoep_spec_am.txt");
        export_spectrum(cfg, SpectrumTarget::symmetrized, path);
        std::ifstream is(path);
        std::string line;
        int count = 0, near = 0;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            double re, im;
            ls >> re >> im;
            CHECK(std::abs(re) <= 1.2);
            if (std::min(std::abs(re - 1), std::abs(re + 1)) < 0.05) ++near;
            ++count;
        }
        CHECK(count == 512);
        CHECK(near > count / 2);
        std::filesystem::remove(path);
    }

    SUBCASE("identity-preconditioned identity problem") {
        // P^{-1} A = I: every line reads "1 0"
        Mat A = 2.5 * Mat::Identity(16, 16);
        CVec ev = preconditioned_spectrum_nonsym(A, A);
        std::string text = format_spectrum(ev);
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) CHECK(line == "1 0");
    }

    SUBCASE("cap refusal") {
        RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {4095};
        cfg.precond = Precond::ar;
        CHECK_THROWS_AS(
            export_spectrum(cfg, SpectrumTarget::symmetrized, temp_file("x.txt")),
            SizeCapError);
    }
}
