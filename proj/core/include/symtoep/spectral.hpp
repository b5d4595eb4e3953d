// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <span>

#include "symtoep/problems.hpp"
#include "symtoep/symbol.hpp"
#include "symtoep/types.hpp"

namespace symtoep {

struct IntervalCheck {
    double lo = 0.0, hi = 0.0;  // descriptive interval of the assertion
    Index violations = 0;
    double max_violation = 0.0;
};

struct PairingCheck {
    Index outliers = 0;   // eigenvalues with |lambda| > 1 + 1e-8
    Index unpaired = 0;   // outliers without a negated partner
    double max_mismatch = 0.0;
};

struct SpectrumReport {
    Vec eigenvalues;  // sorted ascending (real/symmetric paths)
    IntervalCheck bound;
    std::optional<PairingCheck> pairing;
    double epsilon = 0.0;            // inclusion-bound parameter, where applicable
    double cluster_fraction = -1.0;  // fraction within 0.05 of +-1, where applicable
    bool passed = false;
};

/// Sorted eigenvalues of the pencil S x = lambda P x (P SPD, S symmetric),
/// the spectrum of P^{-1/2} S P^{-1/2}. Dense, capped at dimension 2048.
SpectrumReport preconditioned_spectrum_sym(const Mat& P, const Mat& S);

/// Eigenvalues of P^{-1} A for nonsymmetric dense A (spectrum exports).
CVec preconditioned_spectrum_nonsym(const Mat& P, const Mat& A);

/// Certifies the spectral inclusion of the symmetric-part-preconditioned
/// symmetrized operator: 1 - 1e-8 <= |lambda| <= 1 + eps + 1e-6 with eps from
/// epsilon_bound on the instance symbol, plus the +-sqrt(1+lambda_k^2) pairing
/// of nonunit eigenvalues. eps_grid = 0 picks 2^16 (1D) or 2^11 (2D) per axis.
SpectrumReport check_symeigs(const ProblemInstance& p, Index eps_grid = 0,
                             double epsilon_scale = 1.0);

/// Certifies that the symmetrized normalized-symbol operator Y A_n(f/|f|) has
/// eigenvalues in [-1 - 1e-6, 1 + 1e-6]; also reports the fraction within
/// 0.05 of +-1.
SpectrumReport check_absfeigs(const Symbol& f, Index n_small, int oversample = 8);

/// Certifies that the generalized eigenvalues of (A_n(f), A_n(g)) lie inside
/// (r - 1e-9, R + 1e-9), r/R the grid-refined extrema of f/g; f, g real-valued,
/// g essentially positive.
SpectrumReport check_eigfunction_lemma(const Symbol& f, const Symbol& g, Index n_small);

/// max_j | |eig_j(Strang)| - |f|(2 pi j / n) | per size; requires empirically
/// Wiener-class coefficients (tail-decay check over 10^4 coefficients).
std::vector<double> strang_abs_error_curve(const Symbol& f, std::span<const Index> sizes);

/// Spectrum dump: one eigenvalue per line, "re im" with a single space,
/// C-locale shortest-17-significant-digit formatting.
std::string format_spectrum(const CVec& eigs);
std::string format_spectrum(const Vec& eigs);
void write_spectrum(const std::filesystem::path& path, const CVec& eigs);
void write_spectrum(const std::filesystem::path& path, const Vec& eigs);

}  // namespace symtoep
