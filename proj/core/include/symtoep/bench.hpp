// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "symtoep/krylov.hpp"
#include "symtoep/problems.hpp"
#include "symtoep/types.hpp"

namespace symtoep::bench {

enum class Solver { minres, gmres, lsqr };

enum class Precond {
    none,
    ar,                     // exact solve with the symmetric part
    am_exact,               // dense Cholesky of A_n(|f|)
    am_banded,              // banded Cholesky of the truncated A_n(|f|)
    circ_strang,
    circ_optimal,
    circ_superoptimal,
    circ_abs_strang,
    circ_abs_optimal,
    circ_abs_superoptimal,
    block_circ,             // I - I(x)C_x - C_y(x)I (2D)
    block_circ_abs,         // I + I(x)|C_x| + |C_y|(x)I (2D, SPD)
    mg_a,                   // one V-cycle on A_n
    mg_ar,                  // one V-cycle on A_R
    mg_am,                  // one V-cycle on (banded) A_n(|f|)
};

std::string to_string(Solver s);
std::string to_string(Precond p);
Solver solver_from_string(const std::string& s);
Precond precond_from_string(const std::string& s);

struct MgOverrides {
    std::optional<int> pre_smooth, post_smooth;
    std::optional<double> omega;
    std::optional<Index> coarsest;
};

struct RunConfig {
    int example = 1;  // 1, 2 or 3
    std::vector<Index> sizes;
    std::optional<double> alpha, beta;
    std::optional<double> d_plus, d_minus, e_plus, e_minus;
    Solver solver = Solver::minres;
    Precond precond = Precond::none;
    double tol = 1e-8;
    std::optional<ToleranceMode> tol_mode;  // solver default when unset
    int maxit = 200;
    std::uint64_t seed = 1;
    MgOverrides mg;
};

struct ResultRow {
    int example = 0;
    Index n = 0;  // per-axis size
    double alpha = 0, beta = 0, d_plus = 0, d_minus = 0, e_plus = 0, e_minus = 0;
    std::string solver, precond;
    double tol = 0;
    int maxit = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool converged = false;
    double wall_seconds = 0;
    double setup_seconds = 0;
    double final_relres = 0;  // true 2-norm relative residual at exit
    Index operator_applications = 0;  // 2*iterations for LSQR

    bool operator==(const ResultRow&) const = default;
};

/// Builds each instance, runs (solver x preconditioner), one row per size in
/// size-major order. MINRES solves the flip-symmetrized system, GMRES/LSQR
/// the nonsymmetric one. MINRES with a non-SPD preconditioner is a ConfigError
/// before any compute. Deterministic for a fixed seed. Independent rows run on
/// a worker pool capped by the SYMTOEP_THREADS environment variable.
std::vector<ResultRow> run(const RunConfig& cfg);

/// A preconditioner handle plus its setup cost, as used by run().
struct BuiltPreconditioner {
    PreconditionerHandle handle;
    double setup_seconds = 0;
};
BuiltPreconditioner build_preconditioner(Precond kind, const ProblemInstance& inst,
                                         Solver solver, const MgOverrides& mg);

enum class SpectrumTarget { nonsym, symmetrized };

/// Dense spectrum of the preconditioned (possibly symmetrized) operator for
/// the first configured size, written in the spectrum dump format.
void export_spectrum(const RunConfig& cfg, SpectrumTarget target,
                     const std::filesystem::path& path);

std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> from_csv(const std::string& text);
std::string to_json_lines(const std::vector<ResultRow>& rows);
std::vector<ResultRow> from_json_lines(const std::string& text);
std::string render_table(const std::vector<ResultRow>& rows);

}  // namespace symtoep::bench
