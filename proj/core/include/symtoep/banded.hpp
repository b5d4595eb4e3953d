// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symtoep/types.hpp"

namespace symtoep {

/// Cholesky factorization of an SPD banded matrix, O(n b^2) factor and O(n b)
/// solve. Used for the exact solves with banded Toeplitz preconditioners (the
/// tridiagonal symmetric part, banded modulus approximations).
class BandedCholesky {
public:
    /// Factors the symmetric banded matrix with first-column band
    /// (a_0, ..., a_b) repeated along the diagonal (Toeplitz layout).
    /// Throws FactorizationError if not positive definite.
    static BandedCholesky factor_toeplitz(const Vec& band, Index n);

    Vec solve(const Vec& rhs) const;
    Index bandwidth() const { return bw_; }
    Index size() const { return n_; }

private:
    BandedCholesky(Index n, Index bw) : n_(n), bw_(bw), l_((bw + 1) * n) {}
    // l_(k + i*(bw+1)) holds L(i, i-k), k = 0..bw
    double& L(Index i, Index k) { return l_[i * (bw_ + 1) + k]; }
    double L(Index i, Index k) const { return l_[i * (bw_ + 1) + k]; }

    Index n_;
    Index bw_;
    Vec l_;
};

}  // namespace symtoep
