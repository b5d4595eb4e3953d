// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark harness: builds the experiment instances, runs solver x
// preconditioner grids, verifies the spectral certificates and table
// reproductions, and exports dense spectra.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "symtoep/bench.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/verify.hpp"

using namespace symtoep;

namespace {

int run_verify(const std::string& suite, int maxit, const std::string& out) {
    verify::VerifyOptions opts;
    opts.maxit = maxit;
    std::vector<verify::CriterionResult> results;
    if (suite == "theorems")
        results = verify::run_theorems_suite(opts);
    else if (suite == "tables")
        results = verify::run_tables_suite(opts);
    else
        throw ConfigError("--verify expects 'theorems' or 'tables'");
    std::cout << verify::render_report(results);
    if (!out.empty()) {
        std::ofstream os(out);
        os << verify::render_json_report(results);
    }
    return verify::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flip-symmetrized Toeplitz solver benchmarks"};

    std::string example = "ex1";
    std::vector<Index> sizes;
    double alpha = -1, beta = -1, dplus = -1, dminus = -1, eplus = -1, eminus = -1;
    std::string solver = "minres", precond = "none";
    double tol = 1e-8;
    int maxit = 200;
    std::uint64_t seed = 1;
    int mg_sweeps = -1;
    double mg_omega = -1;
    Index mg_coarsest = -1;
    std::string out, format = "table", verify_suite, spectrum_path;
    std::string spectrum_target = "symmetrized", tol_mode;

    app.add_option("--example", example, "experiment family: ex1, ex2 or ex3")
        ->check(CLI::IsMember({"ex1", "ex2", "ex3"}));
    app.add_option("--n", sizes, "problem size per axis (repeatable)");
    app.add_option("--alpha", alpha, "fractional order in x");
    app.add_option("--beta", beta, "fractional order in y (ex3)");
    app.add_option("--dplus", dplus, "left diffusion weight in x");
    app.add_option("--dminus", dminus, "right diffusion weight in x");
    app.add_option("--eplus", eplus, "left diffusion weight in y (ex3)");
    app.add_option("--eminus", eminus, "right diffusion weight in y (ex3)");
    app.add_option("--solver", solver, "minres, gmres or lsqr");
    app.add_option("--precond", precond,
                   "none, ar, am-exact, am-banded, circ-{strang,optimal,superoptimal}, "
                   "circ-abs-*, block-circ[-abs], mg-{a,ar,am}");
    app.add_option("--tol", tol, "stopping tolerance (default 1e-8)");
    app.add_option("--tol-mode", tol_mode, "abs or rel (default: per-solver)");
    app.add_option("--maxit", maxit, "iteration cap (default 200)");
    app.add_option("--seed", seed, "right-hand-side seed");
    app.add_option("--mg-sweeps", mg_sweeps, "pre=post smoothing sweeps override");
    app.add_option("--mg-omega", mg_omega, "Jacobi damping override");
    app.add_option("--mg-coarsest", mg_coarsest, "coarsest-grid size override");
    app.add_option("--out", out, "output file (default stdout)");
    app.add_option("--format", format, "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--verify", verify_suite, "run an acceptance suite: theorems or tables");
    app.add_option("--export-spectrum", spectrum_path, "write the dense preconditioned spectrum");
    app.add_option("--spectrum-target", spectrum_target, "nonsym or symmetrized")
        ->check(CLI::IsMember({"nonsym", "symmetrized"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!verify_suite.empty()) return run_verify(verify_suite, maxit, out);

        bench::RunConfig cfg;
        cfg.example = example == "ex1" ? 1 : (example == "ex2" ? 2 : 3);
        cfg.sizes = sizes;
        if (cfg.sizes.empty()) cfg.sizes = {cfg.example == 3 ? Index{31} : Index{1023}};
        if (alpha >= 0) cfg.alpha = alpha;
        if (beta >= 0) cfg.beta = beta;
        if (dplus >= 0) cfg.d_plus = dplus;
        if (dminus >= 0) cfg.d_minus = dminus;
        if (eplus >= 0) cfg.e_plus = eplus;
        if (eminus >= 0) cfg.e_minus = eminus;
        cfg.solver = bench::solver_from_string(solver);
        cfg.precond = bench::precond_from_string(precond);
        cfg.tol = tol;
        if (!tol_mode.empty()) {
            if (tol_mode == "abs")
                cfg.tol_mode = ToleranceMode::absolute;
            else if (tol_mode == "rel")
                cfg.tol_mode = ToleranceMode::relative;
            else
                throw ConfigError("--tol-mode expects 'abs' or 'rel'");
        }
        cfg.maxit = maxit;
        cfg.seed = seed;
        if (mg_sweeps >= 0) {
            cfg.mg.pre_smooth = mg_sweeps;
            cfg.mg.post_smooth = mg_sweeps;
        }
        if (mg_omega > 0) cfg.mg.omega = mg_omega;
        if (mg_coarsest > 0) cfg.mg.coarsest = mg_coarsest;

        if (!spectrum_path.empty()) {
            auto target = spectrum_target == "nonsym" ? bench::SpectrumTarget::nonsym
                                                      : bench::SpectrumTarget::symmetrized;
            bench::export_spectrum(cfg, target, spectrum_path);
            std::cout << "spectrum written to " << spectrum_path << "\n";
            return 0;
        }

        auto rows = bench::run(cfg);
        std::string text = format == "csv"    ? bench::to_csv(rows)
                           : format == "json" ? bench::to_json_lines(rows)
                                              : bench::render_table(rows);
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(out);
            if (!os) throw InputError("cannot open output file: " + out);
            os << text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
