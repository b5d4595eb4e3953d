// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symtoep/symbol.hpp"
#include "symtoep/types.hpp"

namespace symtoep {

/// Per-level index reversal (the tensor exchange operator). For row-major
/// storage this is a full reversal of the flattened vector, at any rank.
Vec flip(const Dims& dims, const Vec& x);

/// Matrix-free (multilevel) Toeplitz operator with O(N log N) matvec through
/// circulant embedding of length 2n_i per level. Immutable after construction;
/// concurrent applies each own their scratch buffers.
class ToeplitzOperator {
public:
    explicit ToeplitzOperator(FourierCoeffs coeffs);

    static ToeplitzOperator from_coeffs(FourierCoeffs coeffs) {
        return ToeplitzOperator(std::move(coeffs));
    }

    const Dims& dims() const { return dims_; }
    Index size() const { return size_; }
    int rank() const { return static_cast<int>(dims_.size()); }
    const FourierCoeffs& coeffs() const { return coeffs_; }
    bool is_real() const { return real_; }

    /// y = A x. Real output requires real coefficients (or a vanishing
    /// imaginary residue, checked to 1e-12 relative).
    Vec apply(const Vec& x) const;
    /// y = A^T x (coefficient lag negation).
    Vec apply_transpose(const Vec& x) const;
    /// y = Y A x, the symmetrized operator of the flip-symmetrized system.
    Vec apply_symmetrized(const Vec& x) const;

    CVec apply(const CVec& x) const;
    CVec apply_transpose(const CVec& x) const;

    /// Operator with coefficients (a_j + a_{-j})/2, i.e. A_n(f_R); real only.
    ToeplitzOperator symmetric_part() const;
    ToeplitzOperator transpose() const;

    /// Dense materialization, entry (i,j) = a_{i-j} per level. Guarded by a
    /// row cap (O(N^2) memory); throws SizeCapError beyond it.
    Mat dense(Index cap = kDenseCap) const;
    CMat dense_complex(Index cap = kDenseCap) const;
    /// Dense form of Y A (row-reversed dense), symmetric for any Toeplitz A.
    Mat dense_symmetrized(Index cap = kDenseCap) const;

    static constexpr Index kDenseCap = 4096;

private:
    CVec embed_spectrum(const FourierCoeffs& c) const;
    Vec embed_spectrum_real(const FourierCoeffs& c) const;
    Vec apply_impl(const Vec& x, bool transposed) const;
    CVec apply_impl(const CVec& x, bool transposed) const;

    FourierCoeffs coeffs_;
    Dims dims_;
    Dims emb_dims_;  // 2n_i per level
    Index size_;
    bool real_;
    // cached embedding spectra; real operators keep the half-complex r2c form
    CVec femb_, fembT_;
};

}  // namespace symtoep
