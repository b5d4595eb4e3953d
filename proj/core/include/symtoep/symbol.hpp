// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>

#include "symtoep/types.hpp"

namespace symtoep {

/// A generating function f on [-pi,pi]^p, p in {1,2}.
///
/// Optionally carries an analytic coefficient rule j -> a_j for symbols whose
/// Fourier expansion is known in closed form; when present it takes precedence
/// over quadrature in fourier_coeffs().
class Symbol {
public:
    using EvalFn = std::function<Complex(std::span<const double>)>;
    using CoeffFn = std::function<Complex(std::span<const Index>)>;

    Symbol(int dim, EvalFn eval, CoeffFn analytic_coeff = nullptr);

    static Symbol from_function(std::function<Complex(double)> f,
                                CoeffFn analytic_coeff = nullptr);
    static Symbol from_function2(std::function<Complex(double, double)> f,
                                 CoeffFn analytic_coeff = nullptr);

    int dim() const { return dim_; }
    bool has_analytic_coeffs() const { return static_cast<bool>(analytic_); }

    /// Evaluate at theta (componentwise in [-pi,pi]); throws InputError outside.
    Complex operator()(std::span<const double> theta) const;
    Complex operator()(double theta) const;
    Complex operator()(double theta1, double theta2) const;

    Complex analytic_coeff(std::span<const Index> j) const;

private:
    int dim_;
    EvalFn eval_;
    CoeffFn analytic_;
};

/// The derived symbols f_R, f_I, |f| and f/|f| of a parent symbol.
struct SymbolViews {
    Symbol real_part;
    Symbol imag_part;
    Symbol modulus;
    Symbol normalized;  // f/|f|; evaluation throws SingularSymbolError where |f| < delta
};

/// Builds the four views. The normalized view is validated on a default
/// midpoint grid: |f| <= delta anywhere there raises SingularSymbolError.
SymbolViews derive_views(const Symbol& f, double delta = 1e-13);

/// Fourier coefficient tensor a_j, j_i in [-n_i+1, n_i-1], extents 2n_i-1,
/// row-major with the last axis fastest.
class FourierCoeffs {
public:
    FourierCoeffs(Dims dims, CVec values);

    const Dims& dims() const { return dims_; }
    int rank() const { return static_cast<int>(dims_.size()); }
    Index extent(int axis) const { return 2 * dims_[axis] - 1; }
    Index total() const { return static_cast<Index>(values_.size()); }

    Complex at(std::span<const Index> j) const;
    Complex at(Index j) const;
    Complex at(Index j1, Index j2) const;
    Complex& at_mut(std::span<const Index> j);

    const CVec& values() const { return values_; }
    CVec& values() { return values_; }

    /// Largest imaginary part over the tensor; a real generating matrix needs ~0.
    double max_imag() const;
    /// max |a_{-j} - conj(a_j)| (Hermitian symmetry residual of a real symbol).
    double hermitian_residual() const;

    FourierCoeffs reversed() const;  // lag negation (transpose of the operator)

private:
    Index offset(std::span<const Index> j) const;
    Dims dims_;
    CVec values_;
};

/// Trapezoidal quadrature on a uniform midpoint grid of [-pi,pi)^p followed by
/// an FFT; spectrally accurate for periodic integrands. M_i = oversample*(2n_i-1)
/// samples per axis, rounded up to even. The half-step offset keeps the grid
/// clear of theta = 0 and the wrap point, where the example symbols may vanish.
/// If the symbol has an analytic coefficient rule it is used verbatim instead.
FourierCoeffs fourier_coeffs(const Symbol& f, const Dims& dims, int oversample = 8);

/// Grid maximum of |f_I/f_R| over the uniform grid -pi + 2*pi*j/G per axis
/// (G = grid_size), a lower approximation of the essential supremum in the
/// spectral inclusion bound. Points with f_R <= 1e-13 are excluded and probed
/// by one-sided samples at distance 1e-6 instead; f_R < -1e-13 anywhere raises
/// AssumptionError.
double epsilon_bound(const Symbol& f_imag, const Symbol& f_real, Index grid_size);

}  // namespace symtoep
