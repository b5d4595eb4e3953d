// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/krylov.hpp"

#include <chrono>
#include <cmath>

#include "symtoep/errors.hpp"
#include "symtoep/rng.hpp"

namespace symtoep {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vec default_x0(Index n) { return Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))); }

void validate(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
              bool need_transpose) {
    if (!A.apply) throw InputError("solver: operator apply missing");
    if (!P.solve) throw InputError("solver: preconditioner solve missing");
    if (A.size != b.size() || P.size != A.size) throw InputError("solver: size mismatch");
    if (need_transpose && (!A.apply_transpose || !P.solve_transpose))
        throw InputError("solver: transpose operations required");
#ifndef NDEBUG
    if (A.symmetric && A.size >= 2) {
        SplitMix64 rng(0x5eedULL);
        for (int t = 0; t < 10; ++t) {
            Vec x(A.size), y(A.size);
            for (Index i = 0; i < A.size; ++i) {
                x[i] = 2 * rng.uniform() - 1;
                y[i] = 2 * rng.uniform() - 1;
            }
            double lhs = A.apply(x).dot(y);
            double rhs = x.dot(A.apply(y));
            double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            if (std::abs(lhs - rhs) > 1e-10 * scale)
                throw AssumptionError("solver: operator tagged symmetric is not");
        }
    }
#endif
}

double stop_threshold(const SolveOptions& opts, ToleranceMode def, double initial_norm) {
    ToleranceMode mode = opts.tol_mode.value_or(def);
    return mode == ToleranceMode::absolute ? opts.tol : opts.tol * initial_norm;
}

void finish(SolveReport& rep, const LinearOperator& A, const Vec& b, const Vec& x0,
            Clock::time_point t0) {
    double nr0 = (b - A.apply(x0)).norm();
    rep.true_relative_residual = nr0 == 0.0 ? 0.0 : (b - A.apply(rep.x)).norm() / nr0;
    rep.iterations = static_cast<int>(rep.residual_history.size()) - 1;
    rep.wall_seconds = seconds_since(t0);
}

}  // namespace

PreconditionerHandle PreconditionerHandle::identity(Index n) {
    return PreconditionerHandle{
        n, [](const Vec& v) { return v; }, [](const Vec& v) { return v; }, true};
}

SolveReport minres(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
                   const SolveOptions& opts) {
    auto t0 = Clock::now();
    validate(A, P, b, false);
    Index n = b.size();
    SolveReport rep;
    rep.x = opts.x0.value_or(default_x0(n));
    rep.residual_history = {1.0};

    Vec r1 = b - A.apply(rep.x);
    Vec y = P.solve(r1);
    double beta1sq = r1.dot(y);
    if (beta1sq < 0) throw SingularPreconditionerError("minres: preconditioner not SPD");
    double beta1 = std::sqrt(beta1sq);
    if (beta1 == 0.0) {
        rep.converged = true;
        rep.flag = StopFlag::converged;
        finish(rep, A, b, rep.x, t0);
        return rep;
    }
    double threshold = stop_threshold(opts, ToleranceMode::absolute, beta1);

    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
    double phibar = beta1, cs = -1.0, sn = 0.0;
    Vec w = Vec::Zero(n), w2 = Vec::Zero(n), r2 = r1;

    rep.flag = StopFlag::maxit;
    for (int itn = 1; itn <= opts.maxit; ++itn) {
        Vec v = y / beta;
        y = A.apply(v);
        if (itn >= 2) y -= (beta / oldb) * r1;
        double alfa = v.dot(y);
        y -= (alfa / beta) * r2;
        r1 = r2;
        r2 = y;
        y = P.solve(r2);
        oldb = beta;
        double betasq = r2.dot(y);
        if (betasq < -1e-12 * r2.norm() * (y.norm() + 1e-300))
            throw SingularPreconditionerError("minres: preconditioner not SPD");
        beta = std::sqrt(std::max(0.0, betasq));

        double oldeps = epsln;
        double delta = cs * dbar + sn * alfa;
        double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        double gamma = std::hypot(gbar, beta);
        if (gamma < 1e-292) {  // singular reduced system: Lanczos breakdown
            rep.flag = StopFlag::breakdown;
            break;
        }
        cs = gbar / gamma;
        sn = beta / gamma;
        double phi = cs * phibar;
        phibar = sn * phibar;

        Vec w1 = w2;
        w2 = w;
        w = (v - oldeps * w1 - delta * w2) / gamma;
        rep.x += phi * w;

        rep.residual_history.push_back(phibar / beta1);
        if (phibar < threshold) {
            rep.converged = true;
            rep.flag = StopFlag::converged;
            break;
        }
        if (beta < 1e-300) {  // Lanczos breakdown before convergence
            rep.flag = StopFlag::breakdown;
            break;
        }
    }
    finish(rep, A, b, opts.x0.value_or(default_x0(n)), t0);
    return rep;
}

SolveReport gmres_right(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
                        const SolveOptions& opts) {
    auto t0 = Clock::now();
    validate(A, P, b, false);
    Index n = b.size();
    int maxit = opts.maxit;
    SolveReport rep;
    Vec x0 = opts.x0.value_or(default_x0(n));
    rep.x = x0;
    rep.residual_history = {1.0};

    Vec r0 = b - A.apply(x0);
    double beta = r0.norm();
    if (beta == 0.0) {
        rep.converged = true;
        rep.flag = StopFlag::converged;
        finish(rep, A, b, x0, t0);
        return rep;
    }
    double threshold = stop_threshold(opts, ToleranceMode::absolute, beta);

    Mat V(n, maxit + 1);
    Mat H = Mat::Zero(maxit + 1, maxit);
    Vec cs = Vec::Zero(maxit), sn = Vec::Zero(maxit);
    Vec g = Vec::Zero(maxit + 1);
    V.col(0) = r0 / beta;
    g[0] = beta;

    rep.flag = StopFlag::maxit;
    int k = 0;
    for (int j = 0; j < maxit; ++j) {
        Vec w = A.apply(P.solve(V.col(j)));
        for (int i = 0; i <= j; ++i) {
            H(i, j) = V.col(i).dot(w);
            w -= H(i, j) * V.col(i);
        }
        double wn = w.norm();
        if (wn > 0) {
            double loss = 0;
            for (int i = 0; i <= j; ++i) loss = std::max(loss, std::abs(V.col(i).dot(w)));
            if (loss > 1e-8 * wn) {
                for (int i = 0; i <= j; ++i) {
                    double h2 = V.col(i).dot(w);
                    H(i, j) += h2;
                    w -= h2 * V.col(i);
                }
                wn = w.norm();
            }
        }
        H(j + 1, j) = wn;
        bool happy = wn <= 1e-14 * beta;
        if (!happy) V.col(j + 1) = w / wn;

        for (int i = 0; i < j; ++i) {
            double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
            H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
            H(i, j) = t;
        }
        double rho = std::hypot(H(j, j), H(j + 1, j));
        cs[j] = H(j, j) / rho;
        sn[j] = H(j + 1, j) / rho;
        H(j, j) = rho;
        H(j + 1, j) = 0.0;
        g[j + 1] = -sn[j] * g[j];
        g[j] = cs[j] * g[j];
        k = j + 1;

        rep.residual_history.push_back(std::abs(g[j + 1]) / beta);
        if (std::abs(g[j + 1]) < threshold || happy) {
            rep.converged = true;
            rep.flag = StopFlag::converged;
            break;
        }
    }
    Vec yk = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    rep.x = x0 + P.solve(V.leftCols(k) * yk);
    finish(rep, A, b, x0, t0);
    return rep;
}

SolveReport lsqr(const LinearOperator& A, const PreconditionerHandle& P, const Vec& b,
                 const SolveOptions& opts) {
    auto t0 = Clock::now();
    validate(A, P, b, true);
    Index n = b.size();
    SolveReport rep;
    Vec x0 = opts.x0.value_or(default_x0(n));
    rep.x = x0;
    rep.residual_history = {1.0};

    Vec r0 = P.solve(b - A.apply(x0));
    double beta = r0.norm();
    if (beta == 0.0) {
        rep.converged = true;
        rep.flag = StopFlag::converged;
        finish(rep, A, b, x0, t0);
        return rep;
    }
    double beta1 = beta;
    double threshold = stop_threshold(opts, ToleranceMode::relative, beta1);

    Vec u = r0 / beta;
    Vec v = A.apply_transpose(P.solve_transpose(u));
    double alpha = v.norm();
    if (alpha == 0.0) {
        rep.flag = StopFlag::breakdown;
        finish(rep, A, b, x0, t0);
        return rep;
    }
    v /= alpha;
    Vec w = v;
    Vec yk = Vec::Zero(n);
    double phibar = beta, rhobar = alpha;

    rep.flag = StopFlag::maxit;
    for (int itn = 1; itn <= opts.maxit; ++itn) {
        u = P.solve(A.apply(v)) - alpha * u;
        double beta2 = u.norm();
        if (beta2 > 0) u /= beta2;
        Vec vn = A.apply_transpose(P.solve_transpose(u)) - beta2 * v;
        alpha = vn.norm();
        if (alpha > 0) v = vn / alpha;

        double rho = std::hypot(rhobar, beta2);
        double c = rhobar / rho;
        double s = beta2 / rho;
        double theta = s * alpha;
        rhobar = -c * alpha;
        double phi = c * phibar;
        phibar = s * phibar;

        yk += (phi / rho) * w;
        w = v - (theta / rho) * w;

        rep.residual_history.push_back(phibar / beta1);
        if (phibar < threshold) {
            rep.converged = true;
            rep.flag = StopFlag::converged;
            break;
        }
        if (alpha == 0.0 || beta2 == 0.0) {
            rep.flag = StopFlag::breakdown;
            break;
        }
    }
    rep.x = x0 + yk;
    finish(rep, A, b, x0, t0);
    return rep;
}

}  // namespace symtoep
