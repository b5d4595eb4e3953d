// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the O(N log N) kernels. The matvec scaling across sizes
// is the advisory cost check: doubling n should grow wall time by well under
// the quadratic factor.

#include <benchmark/benchmark.h>

#include "symtoep/circulant.hpp"
#include "symtoep/multigrid.hpp"
#include "symtoep/problems.hpp"
#include "symtoep/rng.hpp"

using namespace symtoep;

static void BM_ToeplitzMatvec(benchmark::State& state) {
    Index n = state.range(0);
    ProblemInstance p = example2(n, 1.5, 0.5, 1.0);
    Vec x = gaussian_vector(1, n);
    for (auto _ : state) {
        Vec y = p.op.apply(x);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_ToeplitzMatvec)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_Matvec2D(benchmark::State& state) {
    Index n = state.range(0);
    ProblemInstance p = example3(n, 1.5, 1.75, 2.0, 0.5, 0.3, 1.0);
    Vec x = gaussian_vector(1, n * n);
    for (auto _ : state) {
        Vec y = p.op.apply(x);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_Matvec2D)->Arg(31)->Arg(63)->Arg(127);

static void BM_CirculantSolve(benchmark::State& state) {
    Index n = state.range(0);
    ProblemInstance p = example2(n, 1.5, 0.5, 1.0);
    CirculantOperator c = strang(p.op).absolute_value();
    Vec x = gaussian_vector(2, n);
    for (auto _ : state) {
        Vec y = c.solve(x);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_CirculantSolve)->Arg(1023)->Arg(8191)->Arg(65535);

static void BM_VCycle(benchmark::State& state) {
    Index n = state.range(0);
    ProblemInstance p = example2(n, 1.5, 0.5, 1.0);
    VCycleConfig cfg;
    cfg.coarsest_size = 127;
    GridHierarchy h = GridHierarchy::build(p.op.symmetric_part(), cfg);
    Vec r = gaussian_vector(3, n);
    for (auto _ : state) {
        Vec z = h.apply(r);
        benchmark::DoNotOptimize(z.data());
    }
}
BENCHMARK(BM_VCycle)->Arg(1023)->Arg(4095)->Arg(16383);

static void BM_EpsilonBound(benchmark::State& state) {
    Symbol s = example2_symbol(1.5, 0.5, 1.0, 1.0);
    SymbolViews v = derive_views(s);
    for (auto _ : state) {
        double e = epsilon_bound(v.imag_part, v.real_part, state.range(0));
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_EpsilonBound)->Arg(1 << 14)->Arg(1 << 16);

BENCHMARK_MAIN();
