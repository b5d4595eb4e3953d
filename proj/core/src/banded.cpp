// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/banded.hpp"

#include <cmath>

#include "symtoep/errors.hpp"

namespace symtoep {

BandedCholesky BandedCholesky::factor_toeplitz(const Vec& band, Index n) {
    if (band.size() < 1 || band.size() > n) throw InputError("BandedCholesky: bad band");
    Index bw = band.size() - 1;
    BandedCholesky f(n, bw);
    auto a = [&](Index i, Index j) { return band[i - j]; };  // i >= j within band

    for (Index i = 0; i < n; ++i) {
        Index j0 = std::max<Index>(0, i - bw);
        for (Index j = j0; j < i; ++j) {
            double s = a(i, j);
            for (Index c = j0; c < j; ++c) s -= f.L(i, i - c) * f.L(j, j - c);
            f.L(i, i - j) = s / f.L(j, 0);
        }
        double s = a(i, i);
        for (Index c = j0; c < i; ++c) s -= f.L(i, i - c) * f.L(i, i - c);
        if (!(s > 0)) throw FactorizationError("BandedCholesky: matrix not positive definite");
        f.L(i, 0) = std::sqrt(s);
    }
    return f;
}

Vec BandedCholesky::solve(const Vec& rhs) const {
    if (rhs.size() != n_) throw InputError("BandedCholesky: length mismatch");
    Vec y(n_);
    for (Index i = 0; i < n_; ++i) {
        double s = rhs[i];
        for (Index c = std::max<Index>(0, i - bw_); c < i; ++c) s -= L(i, i - c) * y[c];
        y[i] = s / L(i, 0);
    }
    for (Index i = n_ - 1; i >= 0; --i) {
        double s = y[i];
        Index rmax = std::min(n_ - 1, i + bw_);
        for (Index r = i + 1; r <= rmax; ++r) s -= L(r, r - i) * y[r];
        y[i] = s / L(i, 0);
    }
    return y;
}

}  // namespace symtoep
