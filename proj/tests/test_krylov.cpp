// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Cholesky>

#include <cstring>
#include <memory>

#include "symtoep/errors.hpp"
#include "symtoep/krylov.hpp"
#include "symtoep/problems.hpp"
#include "symtoep/rng.hpp"
#include "symtoep/toeplitz.hpp"

using namespace symtoep;

namespace {

LinearOperator diag_op(Vec d) {
    auto sd = std::make_shared<Vec>(std::move(d));
    return LinearOperator{sd->size(),
                          [sd](const Vec& v) { return (sd->array() * v.array()).matrix(); },
                          [sd](const Vec& v) { return (sd->array() * v.array()).matrix(); },
                          true};
}

}  // namespace

TEST_CASE("minres basics") {
    Index n = 16;
    LinearOperator I = diag_op(Vec::Ones(n));
    auto P = PreconditionerHandle::identity(n);
    Vec b = gaussian_vector(1, n);
    SolveOptions opts;
    opts.tol_mode = ToleranceMode::relative;

    SolveReport r = minres(I, P, b, opts);
    CHECK(r.converged);
    CHECK(r.iterations <= 1);
    CHECK(r.residual_history.front() == 1.0);
    CHECK(static_cast<int>(r.residual_history.size()) == r.iterations + 1);

    SUBCASE("two distinct eigenvalues converge in two steps") {
        Vec d(n);
        for (Index i = 0; i < n; ++i) d[i] = i % 2 == 0 ? 1.0 : -1.0;
        SolveReport r2 = minres(diag_op(d), P, b, opts);
        CHECK(r2.converged);
        CHECK(r2.iterations <= 2);
    }

    SUBCASE("indefinite preconditioner is rejected") {
        auto bad = PreconditionerHandle{n, [](const Vec& v) { return Vec(-v); }, nullptr, false};
        CHECK_THROWS_AS(minres(I, bad, b, opts), SingularPreconditionerError);
    }

    SUBCASE("breakdown on an inconsistent singular system") {
        Vec d(2);
        d << 1.0, 0.0;
        Vec rhs(2);
        rhs << 0.0, 1.0;
        SolveOptions o2;
        o2.x0 = Vec::Zero(2);
        SolveReport r3 = minres(diag_op(d), PreconditionerHandle::identity(2), rhs, o2);
        CHECK_FALSE(r3.converged);
        CHECK(r3.flag == StopFlag::breakdown);
    }
}

TEST_CASE("gmres basics") {
    Index n = 24;
    SplitMix64 rng(3);
    CVec vals = (0.2 * gaussian_vector(rng.next(), 2 * n - 1)).cast<Complex>();
    vals[n - 1] += Complex(3.0, 0);
    ToeplitzOperator T{FourierCoeffs({n}, std::move(vals))};
    LinearOperator A{n, [&T](const Vec& v) { return T.apply(v); },
                     [&T](const Vec& v) { return T.apply_transpose(v); }, false};
    Vec b = gaussian_vector(5, n);

    SUBCASE("exact preconditioner converges in one iteration") {
        Mat D = T.dense();
        auto lu = std::make_shared<Eigen::PartialPivLU<Mat>>(D);
        PreconditionerHandle P{n, [lu](const Vec& v) { return lu->solve(v); }, nullptr, false};
        SolveReport r = gmres_right(A, P, b);
        CHECK(r.converged);
        CHECK(r.iterations == 1);
        CHECK(r.true_relative_residual < 1e-8);
    }

    SUBCASE("happy breakdown on the identity") {
        LinearOperator I = diag_op(Vec::Ones(n));
        SolveReport r = gmres_right(I, PreconditionerHandle::identity(n), b);
        CHECK(r.converged);
        CHECK(r.iterations <= 1);
    }
}

TEST_CASE("lsqr basics") {
    Index n = 12;
    LinearOperator I = diag_op(Vec::Ones(n));
    auto P = PreconditionerHandle::identity(n);
    Vec b = gaussian_vector(7, n);
    SolveReport r = lsqr(I, P, b);
    CHECK(r.converged);
    CHECK(r.iterations <= 1);

    SUBCASE("transpose handles are required") {
        LinearOperator noT{n, [](const Vec& v) { return v; }, nullptr, true};
        CHECK_THROWS_AS(lsqr(noT, P, b), InputError);
    }
}

TEST_CASE("minres and gmres agree for symmetric unpreconditioned systems") {
    Index n = 48;
    SplitMix64 rng(11);
    CVec vals(2 * n - 1);
    for (Index k = 0; k < n; ++k) {
        double v = 0.4 * (2 * rng.uniform() - 1);
        vals[n - 1 + k] = Complex(v, 0);
        vals[n - 1 - k] = Complex(v, 0);
    }
    vals[n - 1] = Complex(4.0, 0);
    ToeplitzOperator T{FourierCoeffs({n}, std::move(vals))};
    LinearOperator A{n, [&T](const Vec& v) { return T.apply(v); },
                     [&T](const Vec& v) { return T.apply_transpose(v); }, true};
    Vec b = gaussian_vector(13, n);
    SolveOptions opts;
    opts.tol = 1e-10;
    opts.tol_mode = ToleranceMode::relative;
    auto P = PreconditionerHandle::identity(n);
    SolveReport rm = minres(A, P, b, opts);
    SolveReport rg = gmres_right(A, P, b, opts);
    REQUIRE(rm.converged);
    REQUIRE(rg.converged);
    // both are minimum-residual methods over the same Krylov spaces
    std::size_t m = std::min(rm.residual_history.size(), rg.residual_history.size());
    for (std::size_t i = 0; i < m; ++i)
        CHECK(rm.residual_history[i] == doctest::Approx(rg.residual_history[i]).epsilon(1e-8));
}

TEST_CASE("absolute and relative tolerance modes") {
    Index n = 32;
    LinearOperator A = diag_op(Vec::LinSpaced(n, 1.0, 3.0));
    auto P = PreconditionerHandle::identity(n);
    Vec b = 1e4 * gaussian_vector(21, n);  // large scale: absolute mode must work harder
    SolveOptions rel;
    rel.tol_mode = ToleranceMode::relative;
    SolveOptions abs;
    abs.tol_mode = ToleranceMode::absolute;
    SolveReport rr = minres(A, P, b, rel);
    SolveReport ra = minres(A, P, b, abs);
    CHECK(rr.converged);
    CHECK(ra.converged);
    CHECK(ra.iterations >= rr.iterations);
    CHECK(ra.residual_history.back() * 1e4 <= 1e-8 * 1.0001);
}

TEST_CASE("reports are deterministic") {
    ProblemInstance p = example1(256, 42);
    LinearOperator A{p.op.size(), [&p](const Vec& v) { return p.op.apply_symmetrized(v); },
                     nullptr, true};
    Vec bs = flip(p.op.dims(), p.rhs);
    auto P = PreconditionerHandle::identity(p.op.size());
    SolveReport a = minres(A, P, bs);
    SolveReport b2 = minres(A, P, bs);
    REQUIRE(a.residual_history.size() == b2.residual_history.size());
    CHECK(std::memcmp(a.residual_history.data(), b2.residual_history.data(),
                      a.residual_history.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.x.data(), b2.x.data(), static_cast<std::size_t>(a.x.size()) * sizeof(double)) == 0);
}

#ifndef NDEBUG
TEST_CASE("symmetric tag is checked in debug builds") {
    Index n = 16;
    SplitMix64 rng(9);
    CVec vals = gaussian_vector(rng.next(), 2 * n - 1).cast<Complex>();
    ToeplitzOperator T{FourierCoeffs({n}, std::move(vals))};
    LinearOperator lying{n, [&T](const Vec& v) { return T.apply(v); }, nullptr, true};
    CHECK_THROWS_AS(
        minres(lying, PreconditionerHandle::identity(n), gaussian_vector(1, n)),
        AssumptionError);
}
#endif
