// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/toeplitz.hpp"

#include <cmath>

#include "symtoep/errors.hpp"
#include "symtoep/fft.hpp"

namespace symtoep {

namespace {
constexpr double kRealTol = 1e-12;
}

Vec flip(const Dims& dims, const Vec& x) {
    if (x.size() != product(dims)) throw InputError("flip: length mismatch");
    return x.reverse();
}

ToeplitzOperator::ToeplitzOperator(FourierCoeffs coeffs)
    : coeffs_(std::move(coeffs)), dims_(coeffs_.dims()) {
    size_ = product(dims_);
    emb_dims_.resize(dims_.size());
    for (std::size_t a = 0; a < dims_.size(); ++a) emb_dims_[a] = 2 * dims_[a];
    real_ = coeffs_.max_imag() < kRealTol;

    FourierCoeffs rev = coeffs_.reversed();
    if (real_) {
        Vec sf = embed_spectrum_real(coeffs_);
        Vec st = embed_spectrum_real(rev);
        // r2c spectra are complex; stored interleaved in CVec
        femb_ = Eigen::Map<const CVec>(reinterpret_cast<const Complex*>(sf.data()),
                                       sf.size() / 2);
        fembT_ = Eigen::Map<const CVec>(reinterpret_cast<const Complex*>(st.data()),
                                        st.size() / 2);
    } else {
        femb_ = embed_spectrum(coeffs_);
        fembT_ = embed_spectrum(rev);
    }
}

namespace {

// embedding offset of lag j in a length-2n circulant axis: j mod 2n
inline Index emb_pos(Index j, Index two_n) { return ((j % two_n) + two_n) % two_n; }

}  // namespace

CVec ToeplitzOperator::embed_spectrum(const FourierCoeffs& c) const {
    CVec emb = CVec::Zero(product(emb_dims_));
    if (rank() == 1) {
        Index n = dims_[0];
        for (Index j = -n + 1; j < n; ++j) emb[emb_pos(j, 2 * n)] = c.at(j);
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index j1 = -n1 + 1; j1 < n1; ++j1)
            for (Index j2 = -n2 + 1; j2 < n2; ++j2)
                emb[emb_pos(j1, 2 * n1) * 2 * n2 + emb_pos(j2, 2 * n2)] = c.at(j1, j2);
    }
    return fft::forward(emb_dims_, emb);
}

Vec ToeplitzOperator::embed_spectrum_real(const FourierCoeffs& c) const {
    Vec emb = Vec::Zero(product(emb_dims_));
    if (rank() == 1) {
        Index n = dims_[0];
        for (Index j = -n + 1; j < n; ++j) emb[emb_pos(j, 2 * n)] = c.at(j).real();
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index j1 = -n1 + 1; j1 < n1; ++j1)
            for (Index j2 = -n2 + 1; j2 < n2; ++j2)
                emb[emb_pos(j1, 2 * n1) * 2 * n2 + emb_pos(j2, 2 * n2)] =
                    c.at(j1, j2).real();
    }
    Index half = product(emb_dims_) / emb_dims_.back() * fft::half_extent(emb_dims_.back());
    CVec spec(half);
    fft::r2c(emb_dims_, emb.data(), spec.data());
    Vec packed(2 * half);
    Eigen::Map<CVec>(reinterpret_cast<Complex*>(packed.data()), half) = spec;
    return packed;
}

Vec ToeplitzOperator::apply_impl(const Vec& x, bool transposed) const {
    if (x.size() != size_) throw InputError("matvec: length mismatch");
    if (!real_) {
        CVec xc = x.cast<Complex>();
        CVec yc = apply_impl(xc, transposed);
        double scale = std::max(1.0, yc.cwiseAbs().maxCoeff());
        double resid = yc.imag().cwiseAbs().maxCoeff();
        if (resid > kRealTol * scale)
            throw InputError("matvec: complex coefficients produced a non-real result");
        return yc.real();
    }
    const CVec& spec = transposed ? fembT_ : femb_;
    Index total = product(emb_dims_);
    Index half = total / emb_dims_.back() * fft::half_extent(emb_dims_.back());

    Vec pad = Vec::Zero(total);
    if (rank() == 1) {
        pad.head(size_) = x;
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index i = 0; i < n1; ++i) pad.segment(i * 2 * n2, n2) = x.segment(i * n2, n2);
    }
    CVec xs(half);
    fft::r2c(emb_dims_, pad.data(), xs.data());
    xs.array() *= spec.array();
    Vec conv(total);
    fft::c2r(emb_dims_, xs.data(), conv.data());
    conv /= static_cast<double>(total);

    Vec y(size_);
    if (rank() == 1) {
        y = conv.head(size_);
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index i = 0; i < n1; ++i) y.segment(i * n2, n2) = conv.segment(i * 2 * n2, n2);
    }
    return y;
}

CVec ToeplitzOperator::apply_impl(const CVec& x, bool transposed) const {
    if (x.size() != size_) throw InputError("matvec: length mismatch");
    Index total = product(emb_dims_);
    CVec spec;
    if (real_) {
        // complex input on a real operator: rebuild the full c2c spectrum once
        FourierCoeffs c = transposed ? coeffs_.reversed() : coeffs_;
        spec = embed_spectrum(c);
    } else {
        spec = transposed ? fembT_ : femb_;
    }
    CVec pad = CVec::Zero(total);
    if (rank() == 1) {
        pad.head(size_) = x;
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index i = 0; i < n1; ++i) pad.segment(i * 2 * n2, n2) = x.segment(i * n2, n2);
    }
    CVec xs = fft::forward(emb_dims_, pad);
    xs.array() *= spec.array();
    CVec conv = fft::backward(emb_dims_, xs) / static_cast<double>(total);

    CVec y(size_);
    if (rank() == 1) {
        y = conv.head(size_);
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index i = 0; i < n1; ++i) y.segment(i * n2, n2) = conv.segment(i * 2 * n2, n2);
    }
    return y;
}

Vec ToeplitzOperator::apply(const Vec& x) const { return apply_impl(x, false); }
Vec ToeplitzOperator::apply_transpose(const Vec& x) const { return apply_impl(x, true); }
CVec ToeplitzOperator::apply(const CVec& x) const { return apply_impl(x, false); }
CVec ToeplitzOperator::apply_transpose(const CVec& x) const { return apply_impl(x, true); }

Vec ToeplitzOperator::apply_symmetrized(const Vec& x) const {
    return flip(dims_, apply(x));
}

ToeplitzOperator ToeplitzOperator::symmetric_part() const {
    if (!real_) throw InputError("symmetric_part: real coefficients required");
    CVec sym = 0.5 * (coeffs_.values() + coeffs_.values().reverse());
    return ToeplitzOperator(FourierCoeffs(dims_, std::move(sym)));
}

ToeplitzOperator ToeplitzOperator::transpose() const {
    return ToeplitzOperator(coeffs_.reversed());
}

CMat ToeplitzOperator::dense_complex(Index cap) const {
    if (size_ > cap) throw SizeCapError("dense: size exceeds materialization cap");
    CMat A(size_, size_);
    if (rank() == 1) {
        for (Index i = 0; i < size_; ++i)
            for (Index j = 0; j < size_; ++j) A(i, j) = coeffs_.at(i - j);
    } else {
        Index n1 = dims_[0], n2 = dims_[1];
        for (Index i1 = 0; i1 < n1; ++i1)
            for (Index i2 = 0; i2 < n2; ++i2)
                for (Index j1 = 0; j1 < n1; ++j1)
                    for (Index j2 = 0; j2 < n2; ++j2)
                        A(i1 * n2 + i2, j1 * n2 + j2) = coeffs_.at(i1 - j1, i2 - j2);
    }
    return A;
}

Mat ToeplitzOperator::dense(Index cap) const {
    if (!real_) throw InputError("dense: operator has complex coefficients");
    return dense_complex(cap).real();
}

Mat ToeplitzOperator::dense_symmetrized(Index cap) const {
    return dense(cap).colwise().reverse();
}

}  // namespace symtoep
