// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symtoep/symbol.hpp"
#include "symtoep/toeplitz.hpp"
#include "symtoep/types.hpp"

namespace symtoep {

/// Circulant matrix in eigenvalue form: C = F* diag(eigs) F with F the unitary
/// DFT matrix, eigs_k = sum_j c_j e^{2 pi i jk/n} for first column c.
class CirculantOperator {
public:
    explicit CirculantOperator(CVec eigs);
    static CirculantOperator from_first_column(const CVec& col);

    Index size() const { return eigs_.size(); }
    const CVec& eigs() const { return eigs_; }
    CVec first_column() const;

    Vec apply(const Vec& x) const;
    /// Throws SingularPreconditionerError when min |eig| <= 1e-12 * max |eig|.
    Vec solve(const Vec& x) const;
    Vec solve_transpose(const Vec& x) const;

    CirculantOperator absolute_value() const;

    /// Zeroes imaginary parts below tol * max|eig|; throws AssumptionError if a
    /// larger imaginary part remains (the matrix is not usably symmetric).
    CirculantOperator realified(double tol = 1e-12) const;
    bool is_spd(double tol = 1e-12) const;

    static constexpr double kSingularTol = 1e-12;

private:
    CVec eigs_;
};

/// Coefficient wrap-around circulant: c_j = a_j for 0 <= j <= n/2, a_{j-n} after.
CirculantOperator strang(const ToeplitzOperator& T);
/// Frobenius-closest circulant: c_j = ((n-j) a_j + j a_{j-n}) / n.
CirculantOperator optimal(const ToeplitzOperator& T);
/// Tyrtyshnikov construction: eigs = eigs(optimal(T T^H)) / conj(eigs(optimal(T))).
CirculantOperator superoptimal(const ToeplitzOperator& T);
/// Circulant with eigenvalues f(2 pi j / n).
CirculantOperator sampled_circulant(const Symbol& f, Index n);

/// Block-circulant preconditioners of the 2D experiments, in effective
/// eigenvalue form over the (n_y, n_x) Fourier grid:
///   nonsym: 1 - lx_j - ly_k        (I - I (x) C_x - C_y (x) I)
///   abs:    1 + |lx_j| + |ly_k|    (I + I (x) |C_x| + |C_y| (x) I), SPD
class BlockCirculant2D {
public:
    enum class Kind { nonsym, abs };

    BlockCirculant2D(CVec eigs_x, CVec eigs_y, Kind kind);

    const Dims& dims() const { return dims_; }
    Index size() const { return product(dims_); }
    Kind kind() const { return kind_; }
    const CMat& effective_eigs() const { return eff_; }

    Vec apply(const Vec& x) const;
    Vec solve(const Vec& x) const;
    Vec solve_transpose(const Vec& x) const;

private:
    Dims dims_;  // (n_y, n_x)
    Kind kind_;
    CMat eff_;  // (n_y, n_x) effective eigenvalues
};

/// Builds the block circulant from Strang approximations of the level factors.
BlockCirculant2D block2d(BlockCirculant2D::Kind kind, const FourierCoeffs& lx_coeffs,
                         const FourierCoeffs& ly_coeffs, const Dims& dims);

}  // namespace symtoep
