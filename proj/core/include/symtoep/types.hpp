// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace symtoep {

using Index = std::int64_t;
using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// Per-level dimensions (n_1, ..., n_p) of a multilevel object, p in {1, 2}.
using Dims = std::vector<Index>;

inline Index product(const Dims& dims) {
    Index p = 1;
    for (Index n : dims) p *= n;
    return p;
}

}  // namespace symtoep
