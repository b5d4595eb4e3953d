// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/circulant.hpp"

#include <cmath>
#include <numbers>

#include "symtoep/errors.hpp"
#include "symtoep/fft.hpp"

namespace symtoep {

namespace {
constexpr double kPi = std::numbers::pi;

void check_real_result(const CVec& y, Vec& out) {
    double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
    if (y.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InputError("circulant: non-real result from real input");
    out = y.real();
}
}  // namespace

CirculantOperator::CirculantOperator(CVec eigs) : eigs_(std::move(eigs)) {
    if (eigs_.size() < 1) throw InputError("CirculantOperator: empty eigenvalue vector");
}

CirculantOperator CirculantOperator::from_first_column(const CVec& col) {
    Dims d{col.size()};
    return CirculantOperator(fft::backward(d, col));
}

CVec CirculantOperator::first_column() const {
    Dims d{eigs_.size()};
    return fft::forward(d, eigs_) / static_cast<double>(eigs_.size());
}

Vec CirculantOperator::apply(const Vec& x) const {
    if (x.size() != eigs_.size()) throw InputError("circulant apply: length mismatch");
    Dims d{eigs_.size()};
    CVec fx = fft::backward(d, x.cast<Complex>());
    fx.array() *= eigs_.array();
    CVec y = fft::forward(d, fx) / static_cast<double>(eigs_.size());
    Vec out;
    check_real_result(y, out);
    return out;
}

Vec CirculantOperator::solve(const Vec& x) const {
    if (x.size() != eigs_.size()) throw InputError("circulant solve: length mismatch");
    double emax = eigs_.cwiseAbs().maxCoeff();
    if (eigs_.cwiseAbs().minCoeff() <= kSingularTol * emax)
        throw SingularPreconditionerError("circulant solve: near-singular eigenvalue");
    Dims d{eigs_.size()};
    CVec fx = fft::backward(d, x.cast<Complex>());
    fx.array() /= eigs_.array();
    CVec y = fft::forward(d, fx) / static_cast<double>(eigs_.size());
    Vec out;
    check_real_result(y, out);
    return out;
}

Vec CirculantOperator::solve_transpose(const Vec& x) const {
    return CirculantOperator(eigs_.conjugate()).solve(x);
}

CirculantOperator CirculantOperator::absolute_value() const {
    return CirculantOperator(eigs_.cwiseAbs().cast<Complex>());
}

CirculantOperator CirculantOperator::realified(double tol) const {
    double emax = std::max(1e-300, eigs_.cwiseAbs().maxCoeff());
    if (eigs_.imag().cwiseAbs().maxCoeff() > tol * emax)
        throw AssumptionError("circulant: imaginary parts too large to truncate");
    return CirculantOperator(eigs_.real().cast<Complex>());
}

bool CirculantOperator::is_spd(double tol) const {
    double emax = std::max(1e-300, eigs_.cwiseAbs().maxCoeff());
    for (Index k = 0; k < eigs_.size(); ++k)
        if (std::abs(eigs_[k].imag()) > tol * emax || eigs_[k].real() <= tol * emax)
            return false;
    return true;
}

namespace {

CVec strang_column(const FourierCoeffs& c, Index n) {
    CVec col = CVec::Zero(n);
    for (Index j = 0; j <= n / 2; ++j) col[j] = c.at(j);
    for (Index j = n / 2 + 1; j < n; ++j) col[j] = c.at(j - n);
    return col;
}

}  // namespace

CirculantOperator strang(const ToeplitzOperator& T) {
    if (T.rank() != 1) throw InputError("strang: 1-level operator required");
    Index n = T.size();
    if (n < 2) throw InputError("strang: n >= 2 required");
    return CirculantOperator::from_first_column(strang_column(T.coeffs(), n));
}

CirculantOperator optimal(const ToeplitzOperator& T) {
    if (T.rank() != 1) throw InputError("optimal: 1-level operator required");
    Index n = T.size();
    if (n < 2) throw InputError("optimal: n >= 2 required");
    const FourierCoeffs& c = T.coeffs();
    CVec col(n);
    col[0] = c.at(Index{0});
    for (Index j = 1; j < n; ++j)
        col[j] = (static_cast<double>(n - j) * c.at(j) + static_cast<double>(j) * c.at(j - n)) /
                 static_cast<double>(n);
    return CirculantOperator::from_first_column(col);
}

CirculantOperator superoptimal(const ToeplitzOperator& T) {
    if (T.rank() != 1) throw InputError("superoptimal: 1-level operator required");
    Index n = T.size();
    if (n < 2) throw InputError("superoptimal: n >= 2 required");
    if (n > 8192) throw InputError("superoptimal: quadratic construction capped at n = 8192");
    const FourierCoeffs& c = T.coeffs();

    // wrapped-diagonal sums of T T^H: the optimal circulant of a general matrix
    // averages its wrapped diagonals
    CVec diag_sums = CVec::Zero(n);
    for (Index u = -n + 1; u < n; ++u) {
        Complex au = c.at(u);
        if (au == Complex(0, 0)) continue;
        for (Index v = -n + 1; v < n; ++v) {
            Complex av = c.at(v);
            if (av == Complex(0, 0)) continue;
            Index overlap = n - std::max<Index>({0, u, v}) + std::min<Index>({0, u, v});
            if (overlap <= 0) continue;
            Index d = (((u - v) % n) + n) % n;
            diag_sums[d] += au * std::conj(av) * static_cast<double>(overlap);
        }
    }
    CVec col_tth = diag_sums / static_cast<double>(n);
    Dims dd{n};
    CVec num = fft::backward(dd, col_tth);
    CVec den = optimal(T).eigs();
    double dmax = den.cwiseAbs().maxCoeff();
    if (den.cwiseAbs().minCoeff() <= CirculantOperator::kSingularTol * dmax)
        throw SingularPreconditionerError("superoptimal: optimal(T) has a zero eigenvalue");
    return CirculantOperator(num.cwiseQuotient(den.conjugate()));
}

CirculantOperator sampled_circulant(const Symbol& f, Index n) {
    if (f.dim() != 1) throw InputError("sampled_circulant: 1-d symbol required");
    CVec eigs(n);
    for (Index j = 0; j < n; ++j) {
        double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
        if (t > kPi) t -= 2 * kPi;  // wrap into the symbol's domain
        eigs[j] = f(t);
    }
    return CirculantOperator(std::move(eigs));
}

BlockCirculant2D::BlockCirculant2D(CVec eigs_x, CVec eigs_y, Kind kind)
    : dims_{eigs_y.size(), eigs_x.size()}, kind_(kind) {
    Index ny = dims_[0], nx = dims_[1];
    eff_.resize(ny, nx);
    for (Index k = 0; k < ny; ++k)
        for (Index j = 0; j < nx; ++j)
            eff_(k, j) = kind == Kind::nonsym
                             ? Complex(1, 0) - eigs_x[j] - eigs_y[k]
                             : Complex(1 + std::abs(eigs_x[j]) + std::abs(eigs_y[k]), 0);
}

namespace {

Vec block_apply(const CMat& eff, const Dims& dims, const Vec& x, bool invert, bool conj) {
    if (x.size() != product(dims)) throw InputError("block circulant: length mismatch");
    Index ny = dims[0], nx = dims[1];
    CVec fx = fft::backward(dims, x.cast<Complex>());
    for (Index k = 0; k < ny; ++k)
        for (Index j = 0; j < nx; ++j) {
            Complex e = conj ? std::conj(eff(k, j)) : eff(k, j);
            if (invert)
                fx[k * nx + j] /= e;
            else
                fx[k * nx + j] *= e;
        }
    CVec y = fft::forward(dims, fx) / static_cast<double>(product(dims));
    Vec out;
    check_real_result(y, out);
    return out;
}

}  // namespace

Vec BlockCirculant2D::apply(const Vec& x) const { return block_apply(eff_, dims_, x, false, false); }

Vec BlockCirculant2D::solve(const Vec& x) const {
    double emax = eff_.cwiseAbs().maxCoeff();
    if (eff_.cwiseAbs().minCoeff() <= CirculantOperator::kSingularTol * emax)
        throw SingularPreconditionerError("block circulant: near-singular effective eigenvalue");
    return block_apply(eff_, dims_, x, true, false);
}

Vec BlockCirculant2D::solve_transpose(const Vec& x) const {
    double emax = eff_.cwiseAbs().maxCoeff();
    if (eff_.cwiseAbs().minCoeff() <= CirculantOperator::kSingularTol * emax)
        throw SingularPreconditionerError("block circulant: near-singular effective eigenvalue");
    return block_apply(eff_, dims_, x, true, true);
}

BlockCirculant2D block2d(BlockCirculant2D::Kind kind, const FourierCoeffs& lx_coeffs,
                         const FourierCoeffs& ly_coeffs, const Dims& dims) {
    if (dims.size() != 2) throw InputError("block2d: dims must have two levels");
    if (lx_coeffs.dims()[0] != dims[1] || ly_coeffs.dims()[0] != dims[0])
        throw InputError("block2d: factor coefficient sizes must match dims (n_y, n_x)");
    CVec ex = strang(ToeplitzOperator(lx_coeffs)).eigs();
    CVec ey = strang(ToeplitzOperator(ly_coeffs)).eigs();
    return BlockCirculant2D(std::move(ex), std::move(ey), kind);
}

}  // namespace symtoep
