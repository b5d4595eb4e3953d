// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "symtoep/symbol.hpp"
#include "symtoep/toeplitz.hpp"
#include "symtoep/types.hpp"

namespace symtoep {

/// Grunwald-Letnikov weights g_{alpha,k} = (-1)^k C(alpha, k), k = 0..count,
/// by the stable recurrence g_k = g_{k-1} (1 - (alpha+1)/k).
struct GrunwaldCoeffs {
    double alpha;
    Vec values;
};
GrunwaldCoeffs grunwald(double alpha, Index count);

struct ProblemMeta {
    int example = 0;
    Dims dims;
    double alpha = 0, beta = 0;
    double d_plus = 0, d_minus = 0, e_plus = 0, e_minus = 0;
    double nu = 0, tau = 0, h = 0;
    std::uint64_t seed = 0;
};

struct ProblemInstance {
    ToeplitzOperator op;
    Vec rhs;
    Symbol symbol;
    ProblemMeta meta;
};

/// Nonsymmetric Toeplitz system with symbol (2 - 2cos t)(1 + i t) and a seeded
/// standard-normal right-hand side. Coefficients are analytic: the symbol's
/// imaginary part is t(2 - 2cos t), integrable in closed form.
ProblemInstance example1(Index n, std::uint64_t seed);
Symbol example1_symbol();

/// One backward-Euler step of the 1D two-sided fractional diffusion problem:
/// A = nu I + d+ L_a + d- L_a^T, nu = tau/h^a, tau = 1/ceil(n^a), h = 1/(n+1),
/// rhs = nu * u0 with u0(x) = 80 sin(20x) cos(10x) and zero source term.
ProblemInstance example2(Index n, double alpha, double d_plus, double d_minus);
/// The generating symbol nu + d+ f_a(t) + d- f_a(-t); nu = 1 gives the
/// n-independent symbol of the spectral-bound table.
Symbol example2_symbol(double alpha, double d_plus, double d_minus, double nu = 1.0);

/// One backward-Euler step of the 2D problem on an n x n interior grid,
/// x fastest (level order (n_y, n_x)); rhs = u0 with
/// u0(x,y) = 100 sin(10x) cos(y) and zero source term.
ProblemInstance example3(Index n, double alpha, double beta, double d_plus, double d_minus,
                         double e_plus, double e_minus);
Symbol example3_symbol(Index n, double alpha, double beta, double d_plus, double d_minus,
                       double e_plus, double e_minus);

/// 1D Grunwald level factor of the 2D operator: coefficients of
/// (tau/h^s)(w+ L_s + w- L_s^T) as a length-n coefficient tensor.
FourierCoeffs example3_level_coeffs(Index n, double s, double w_plus, double w_minus,
                                    double tau);

/// Banded truncation of A_n(|f|) keeping the first B coefficients of row and
/// column; B = 50 for alpha = 1.25, otherwise ceil(beta 1.1^{log2(n+1)}) with
/// beta = 40 (alpha = 1.5) or 100 (alpha = 1.75); other alpha reuse the
/// alpha = 1.5 rule. B > n is clamped with a warning record.
struct BandedApproximation {
    ToeplitzOperator op;
    Index bandwidth = 0;
    bool clamped = false;
};
BandedApproximation banded_am(const Symbol& modulus, Index n, double alpha);

}  // namespace symtoep
