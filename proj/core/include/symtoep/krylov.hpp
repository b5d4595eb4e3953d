// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symtoep/types.hpp"

namespace symtoep {

/// Matrix-free operator handle. apply_transpose may be empty unless the
/// solver needs it (LSQR does).
struct LinearOperator {
    Index size = 0;
    std::function<Vec(const Vec&)> apply;
    std::function<Vec(const Vec&)> apply_transpose;
    bool symmetric = false;
};

/// Preconditioner handle: solve applies P^{-1}. solve_transpose applies P^{-T}
/// and may be empty unless the solver needs it.
struct PreconditionerHandle {
    Index size = 0;
    std::function<Vec(const Vec&)> solve;
    std::function<Vec(const Vec&)> solve_transpose;
    bool spd = false;

    static PreconditionerHandle identity(Index n);
};

enum class StopFlag { converged, maxit, breakdown };

/// What the stopping test compares against tol. The monitored residual norm
/// itself is solver-specific: MINRES tracks ||r_k|| in the P^{-1} inner
/// product, GMRES the true 2-norm under right preconditioning, LSQR the
/// 2-norm of the (left-)preconditioned residual.
enum class ToleranceMode {
    absolute,  // monitored norm < tol
    relative,  // monitored norm < tol * (its initial value)
};

struct SolveOptions {
    double tol = 1e-8;
    int maxit = 200;
    std::optional<ToleranceMode> tol_mode;  // per-solver default when unset
    std::optional<Vec> x0;                  // default (1,...,1)/sqrt(n)
};

struct SolveReport {
    Vec x;
    int iterations = 0;
    bool converged = false;
    StopFlag flag = StopFlag::maxit;
    /// Monitored residual norms scaled by their initial value; [0] = 1,
    /// length = iterations + 1.
    std::vector<double> residual_history;
    /// ||b - A x|| / ||b - A x0|| at exit, for cross-checking the monitor.
    double true_relative_residual = 0.0;
    double wall_seconds = 0.0;
};

/// Preconditioned MINRES for symmetric A and SPD P (caller-certified; see
/// spd_guard). Monitors ||r_k||_{P^{-1}}; default stop: absolute.
SolveReport minres(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
                   const SolveOptions& opts = {});

/// Right-preconditioned GMRES, full (unrestarted) Arnoldi with modified
/// Gram-Schmidt and one reorthogonalization pass when the loss of
/// orthogonality exceeds 1e-8. Monitors the true residual of A x = b;
/// default stop: absolute.
SolveReport gmres_right(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
                        const SolveOptions& opts = {});

/// Left-preconditioned LSQR (Golub-Kahan bidiagonalization of P^{-1} A).
/// Requires apply_transpose on A and solve_transpose on P. Monitors
/// ||P^{-1}(b - A x)||; default stop: relative. Each iteration costs two
/// operator applications and two preconditioner solves.
SolveReport lsqr(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
                 const SolveOptions& opts = {});

}  // namespace symtoep
