// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "symtoep/toeplitz.hpp"
#include "symtoep/types.hpp"

namespace symtoep {

struct VCycleConfig {
    int pre_smooth = 2;
    int post_smooth = 2;
    double omega = 0.7;       // damped-Jacobi factor, in (0, 1]
    Index coarsest_size = 3;  // per-axis dimension threshold
};

/// Geometric multigrid hierarchy over a (multilevel) Toeplitz operator.
///
/// Levels follow n -> (n-1)/2 per axis (finest sizes must be 2^k - 1). The
/// Galerkin coarse operator R A P of a Toeplitz operator with the linear
/// interpolation stencil (1/2, 1, 1/2) and full-weighting restriction
/// (1/4)(1, 2, 1) is again Toeplitz ((2d)-strided stencil convolution of the
/// coefficients), so every level is stored as coefficients and applied with
/// FFT matvecs; the coarsest level holds a dense LU factorization.
class GridHierarchy {
public:
    static GridHierarchy build(const ToeplitzOperator& finest, const VCycleConfig& cfg);

    /// One V-cycle applied to a residual, zero initial guess: z ~= A^{-1} r.
    /// A fixed linear operator (no iteration history).
    Vec apply(const Vec& r) const;
    /// Exact transpose of apply(): transposed level operators, swapped sweep
    /// counts, transposed coarsest solve.
    Vec apply_transpose(const Vec& r) const;

    int num_levels() const { return static_cast<int>(levels_.size()) + 1; }
    const ToeplitzOperator& level_operator(int level) const;
    const Mat& coarsest_matrix() const { return coarse_; }
    const VCycleConfig& config() const { return cfg_; }
    Index size() const;

private:
    GridHierarchy() = default;

    struct Level {
        ToeplitzOperator op;
        double jacobi_diag;  // constant along the diagonal of a Toeplitz level
    };

    Vec cycle(const Vec& r, std::size_t level, bool transposed) const;

    VCycleConfig cfg_;
    std::vector<Level> levels_;  // finest first; coarsest handled densely
    Dims coarse_dims_;
    Mat coarse_;
    Eigen::FullPivLU<Mat> coarse_lu_;
    Eigen::FullPivLU<Mat> coarse_lu_t_;
};

/// Densely assembles the V-cycle operator by applying it to unit vectors and
/// reports whether it is symmetric (1e-8) and positive definite - the property
/// an SPD-preconditioned MINRES needs. Finest size capped at 2048.
bool spd_guard(const GridHierarchy& h);

/// Galerkin coefficient coarsening (exposed for verification):
/// ahat_d = sum_{u,v} r_u p_v a_{2d+u-v} per axis.
FourierCoeffs galerkin_coarse_coeffs(const FourierCoeffs& fine);

Vec mg_restrict(const Dims& fine_dims, const Vec& x);
Vec mg_prolong(const Dims& coarse_dims, const Vec& x);

}  // namespace symtoep
