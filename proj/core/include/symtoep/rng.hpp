// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "symtoep/types.hpp"

namespace symtoep {

/// SplitMix64 counter generator. Chosen over std::mt19937/std::normal_distribution
/// because the standard normal distribution is implementation-defined and the
/// benchmark harness promises bit-identical right-hand sides across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in the open interval (0, 1).
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Standard-normal vector via Box-Muller on SplitMix64 uniforms.
Vec gaussian_vector(std::uint64_t seed, Index n);

/// Uniform(-1,1) vector, same generator.
Vec uniform_vector(std::uint64_t seed, Index n);

}  // namespace symtoep
