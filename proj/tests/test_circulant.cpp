// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

#include "symtoep/circulant.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/problems.hpp"
#include "symtoep/rng.hpp"

using namespace symtoep;

namespace {
constexpr double kPi = std::numbers::pi;

FourierCoeffs coeffs1d(std::initializer_list<double> lags) {
    CVec v(static_cast<Index>(lags.size()));
    Index i = 0;
    for (double x : lags) v[i++] = Complex(x, 0);
    return FourierCoeffs({(static_cast<Index>(lags.size()) + 1) / 2}, std::move(v));
}

Mat dense_circulant(const CirculantOperator& c) {
    Index n = c.size();
    CVec col = c.first_column();
    Mat D(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) D(i, j) = col[(((i - j) % n) + n) % n].real();
    return D;
}

}  // namespace

TEST_CASE("strang circulant of the tridiagonal operator") {
    // tridiagonal (-1,2,-1) at n = 4
    CVec v = CVec::Zero(7);
    v[2] = -1;
    v[3] = 2;
    v[4] = -1;
    ToeplitzOperator T4(FourierCoeffs({4}, std::move(v)));
    CirculantOperator c = strang(T4);
    CVec col = c.first_column();
    CHECK(col[0].real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(col[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(col[2]) < 1e-12);
    CHECK(col[3].real() == doctest::Approx(-1.0).epsilon(1e-12));
    Vec want(4);
    want << 0, 2, 4, 2;
    for (Index k = 0; k < 4; ++k) CHECK(std::abs(c.eigs()[k] - Complex(want[k], 0)) < 1e-12);

    SUBCASE("identity coefficients give the identity circulant") {
        CVec iv = CVec::Zero(7);
        iv[3] = 1;
        CirculantOperator ci = strang(ToeplitzOperator(FourierCoeffs({4}, std::move(iv))));
        for (Index k = 0; k < 4; ++k) CHECK(std::abs(ci.eigs()[k] - Complex(1, 0)) < 1e-13);
    }
}

TEST_CASE("strang eigenvalues approach the symbol samples") {
    Symbol phi = example2_symbol(1.5, 0.5, 1.0, 1.0);
    double prev = 1e300;
    for (Index n : {63, 255, 1023}) {
        ToeplitzOperator T(fourier_coeffs(phi, {n}));
        CirculantOperator cs = strang(T);
        CirculantOperator samp = sampled_circulant(phi, n);
        double err = (cs.eigs() - samp.eigs()).cwiseAbs().maxCoeff();
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("optimal circulant") {
    CVec iv = CVec::Zero(7);
    iv[3] = 1;
    CirculantOperator ci = optimal(ToeplitzOperator(FourierCoeffs({4}, std::move(iv))));
    for (Index k = 0; k < 4; ++k) CHECK(std::abs(ci.eigs()[k] - Complex(1, 0)) < 1e-13);

    CVec v = CVec::Zero(7);
    v[2] = -1;
    v[3] = 2;
    v[4] = -1;
    ToeplitzOperator T4(FourierCoeffs({4}, std::move(v)));
    CVec col = optimal(T4).first_column();
    CHECK(col[0].real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(col[1].real() == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(std::abs(col[2]) < 1e-12);
    CHECK(col[3].real() == doctest::Approx(-0.75).epsilon(1e-12));

    SUBCASE("Frobenius projection beats random circulants") {
        SplitMix64 rng(77);
        Index n = 64;
        ToeplitzOperator R(
            FourierCoeffs({n}, gaussian_vector(rng.next(), 2 * n - 1).cast<Complex>()));
        Mat D = R.dense();
        CirculantOperator copt = optimal(R);
        double best = (dense_circulant(copt) - D).norm();
        for (int t = 0; t < 500; ++t) {
            CVec pert = copt.first_column();
            for (Index i = 0; i < n; ++i)
                pert[i] += Complex(0.1 * (2 * rng.uniform() - 1), 0);
            double other = (dense_circulant(CirculantOperator::from_first_column(pert)) - D).norm();
            CHECK(best <= other + 1e-12);
        }
    }
}

TEST_CASE("superoptimal circulant") {
    CVec iv = CVec::Zero(7);
    iv[3] = 1;
    ToeplitzOperator I4(FourierCoeffs({4}, std::move(iv)));
    CirculantOperator s = superoptimal(I4);
    for (Index k = 0; k < 4; ++k) CHECK(std::abs(s.eigs()[k] - Complex(1, 0)) < 1e-12);

    SUBCASE("fixed point on circulant input") {
        // build a Toeplitz operator that happens to be circulant (n = 4)
        CVec v = CVec::Zero(7);
        // first column (5, 1, 2, 3): lags a_0=5, a_1=1, a_2=2, a_3=3; a_{-k}=col[n-k]
        v[3] = 5;
        v[4] = 1;
        v[5] = 2;
        v[6] = 3;
        v[2] = 3;  // a_{-1} = col[3]
        v[1] = 2;  // a_{-2} = col[2]
        v[0] = 1;  // a_{-3} = col[1]
        ToeplitzOperator C(FourierCoeffs({4}, std::move(v)));
        CirculantOperator s2 = superoptimal(C);
        CirculantOperator direct = strang(C);  // C is circulant so strang reproduces it
        CHECK((s2.eigs() - direct.eigs()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("definitional comparison at n = 32") {
        SplitMix64 rng(31);
        Index n = 32;
        CVec coef = (0.4 * gaussian_vector(rng.next(), 2 * n - 1)).cast<Complex>();
        coef[n - 1] += Complex(4.0, 0);
        ToeplitzOperator R{FourierCoeffs({n}, std::move(coef))};
        Mat D = R.dense();
        auto score = [&](const CirculantOperator& c) {
            Mat Ci = dense_circulant(c).inverse();
            return (Mat::Identity(n, n) - Ci * D).norm();
        };
        CHECK(score(superoptimal(R)) <= score(optimal(R)) + 1e-9);
    }
}

TEST_CASE("sampled circulant") {
    Symbol c3 = Symbol::from_function([](double) { return Complex(3.5, 0); });
    CirculantOperator cc = sampled_circulant(c3, 6);
    for (Index k = 0; k < 6; ++k) CHECK(std::abs(cc.eigs()[k] - Complex(3.5, 0)) < 1e-14);

    Symbol lap = Symbol::from_function([](double t) { return Complex(2 - 2 * std::cos(t), 0); });
    CirculantOperator cl = sampled_circulant(lap, 4);
    Vec want(4);
    want << 0, 2, 4, 2;
    for (Index k = 0; k < 4; ++k) CHECK(std::abs(cl.eigs()[k] - Complex(want[k], 0)) < 1e-14);

    Symbol mod = derive_views(example2_symbol(1.5, 0.5, 1.0, 1.0)).modulus;
    CirculantOperator cm = sampled_circulant(mod, 64);
    for (Index k = 0; k < 64; ++k) CHECK(cm.eigs()[k].real() >= 0.99);
}

TEST_CASE("absolute value circulant") {
    CVec e(2);
    e << Complex(-1, 0), Complex(2, 0);
    CirculantOperator c(e);
    CirculantOperator a = c.absolute_value();
    CHECK(a.eigs()[0].real() == doctest::Approx(1.0));
    CHECK(a.eigs()[1].real() == doctest::Approx(2.0));

    // idempotent, and equal to the singular values of the dense circulant
    CirculantOperator aa = a.absolute_value();
    CHECK((aa.eigs() - a.eigs()).cwiseAbs().maxCoeff() == 0.0);

    SplitMix64 rng(8);
    CVec re(8);
    for (Index i = 0; i < 8; ++i) re[i] = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    CirculantOperator r(re);
    CMat D(8, 8);
    CVec col = r.first_column();
    for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 8; ++j) D(i, j) = col[(((i - j) % 8) + 8) % 8];
    Eigen::JacobiSVD<CMat> svd(D);
    Vec sv = svd.singularValues();
    Vec av = r.absolute_value().eigs().real();
    std::sort(av.data(), av.data() + av.size(), std::greater<double>());
    CHECK((sv - av).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply and solve") {
    CVec e = CVec::Ones(5);
    CirculantOperator id(e);
    Vec x = gaussian_vector(3, 5);
    CHECK((id.apply(x) - x).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((id.solve(x) - x).cwiseAbs().maxCoeff() < 1e-13);

    CVec sing(4);
    sing << Complex(0, 0), Complex(2, 0), Complex(4, 0), Complex(2, 0);
    CHECK_THROWS_AS(CirculantOperator(sing).solve(Vec::Ones(4)), SingularPreconditionerError);

    SplitMix64 rng(9);
    CVec spd(256);
    // palindromic positive eigenvalues: a real symmetric positive definite circulant
    for (Index i = 0; i <= 128; ++i) spd[i] = Complex(0.5 + rng.uniform(), 0);
    for (Index i = 1; i < 128; ++i) spd[256 - i] = spd[i];
    CirculantOperator c(spd);
    Vec y = gaussian_vector(11, 256);
    CHECK((c.solve(c.apply(y)) - y).norm() / y.norm() < 1e-10);

    // first column <-> eigenvalues round trip
    CirculantOperator back = CirculantOperator::from_first_column(c.first_column());
    CHECK((back.eigs() - c.eigs()).cwiseAbs().maxCoeff() < 1e-12);

    // apply matches the dense circulant
    CHECK((c.apply(y) - dense_circulant(c) * y).norm() / y.norm() < 1e-12);

    // transpose solve: dense oracle
    CVec gen(16);
    for (Index i = 0; i < 16; ++i) gen[i] = Complex(1.5 + rng.uniform(), rng.uniform());
    // make eigenvalues conjugate-symmetric so the matrix is real
    for (Index i = 1; i < 8; ++i) gen[16 - i] = std::conj(gen[i]);
    gen[8] = Complex(gen[8].real(), 0);
    gen[0] = Complex(gen[0].real(), 0);
    CirculantOperator rc(gen);
    Mat Drc = dense_circulant(rc);
    Vec z = gaussian_vector(13, 16);
    CHECK((rc.solve_transpose(z) - Drc.transpose().partialPivLu().solve(z)).norm() < 1e-10);
}

TEST_CASE("block circulants of the 2D experiment") {
    Index n = 7;
    ProblemInstance p = example3(n, 1.5, 1.75, 2.0, 0.5, 0.3, 1.0);
    FourierCoeffs lx = example3_level_coeffs(n, 1.5, 2.0, 0.5, p.meta.tau);
    FourierCoeffs ly = example3_level_coeffs(n, 1.75, 0.3, 1.0, p.meta.tau);

    SUBCASE("zero factors give the identity preconditioner") {
        FourierCoeffs z({n}, CVec::Zero(2 * n - 1));
        for (auto kind : {BlockCirculant2D::Kind::nonsym, BlockCirculant2D::Kind::abs}) {
            BlockCirculant2D b = block2d(kind, z, z, {n, n});
            Vec x = gaussian_vector(17, n * n);
            CHECK((b.solve(x) - x).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SUBCASE("abs kind is bounded below by one") {
        BlockCirculant2D b = block2d(BlockCirculant2D::Kind::abs, lx, ly, {n, n});
        CHECK(b.effective_eigs().real().minCoeff() >= 1.0);
        CHECK(b.effective_eigs().imag().cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("nonsym kind matches the dense Kronecker assembly") {
        BlockCirculant2D b = block2d(BlockCirculant2D::Kind::nonsym, lx, ly, {n, n});
        Mat Cx = dense_circulant(strang(ToeplitzOperator(lx)));
        Mat Cy = dense_circulant(strang(ToeplitzOperator(ly)));
        Mat I = Mat::Identity(n, n);
        Mat CN = Mat::Identity(n * n, n * n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k)
                    for (Index l = 0; l < n; ++l) {
                        // I (x) Cx contributes on matching slow indices
                        double v = 0.0;
                        if (i == k) v -= Cx(j, l);
                        if (j == l) v -= Cy(i, k);
                        CN(i * n + j, k * n + l) += v;
                    }
        Eigen::PartialPivLU<Mat> lu(CN);
        for (Index u = 0; u < n * n; ++u) {
            Vec e = Vec::Zero(n * n);
            e[u] = 1.0;
            CHECK((b.solve(e) - lu.solve(e)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}
