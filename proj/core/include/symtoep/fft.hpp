// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "symtoep/types.hpp"

namespace symtoep::fft {

/// Unnormalized c2c DFT over a rank-1 or rank-2 row-major array.
/// sign = -1 is the forward transform (e^{-2*pi*i*jk/n}), sign = +1 the backward.
/// Plans are cached per (dims, sign); execution is thread-safe, each call
/// owns its scratch buffers.
void c2c(const Dims& dims, const Complex* in, Complex* out, int sign);

CVec forward(const Dims& dims, const CVec& in);
CVec backward(const Dims& dims, const CVec& in);

inline Index half_extent(Index n) { return n / 2 + 1; }

/// Real-to-complex forward transform; out has extents dims[0..p-2] x (dims.back()/2+1).
void r2c(const Dims& dims, const double* in, Complex* out);

/// Complex-to-real backward transform (unnormalized); inverse of r2c up to a factor
/// of product(dims). Destroys nothing: input is copied internally.
void c2r(const Dims& dims, const Complex* in, double* out);

}  // namespace symtoep::fft
