// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/rng.hpp"

#include <cmath>
#include <numbers>

namespace symtoep {

Vec gaussian_vector(std::uint64_t seed, Index n) {
    SplitMix64 rng(seed);
    Vec v(n);
    for (Index i = 0; i < n; i += 2) {
        double u1 = rng.uniform();
        double u2 = rng.uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        v[i] = r * std::cos(a);
        if (i + 1 < n) v[i + 1] = r * std::sin(a);
    }
    return v;
}

Vec uniform_vector(std::uint64_t seed, Index n) {
    SplitMix64 rng(seed);
    Vec v(n);
    for (Index i = 0; i < n; ++i) v[i] = 2.0 * rng.uniform() - 1.0;
    return v;
}

}  // namespace symtoep
