// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/multigrid.hpp"

#include <Eigen/Cholesky>

#include "symtoep/errors.hpp"

namespace symtoep {

namespace {

constexpr double kRestrict[3] = {0.25, 0.5, 0.25};
constexpr double kProlong[3] = {0.5, 1.0, 0.5};

bool is_pow2_minus_1(Index n) { return n >= 3 && ((n + 1) & n) == 0; }

Complex coarse_coeff_1d(const FourierCoeffs& c, Index n, Index d) {
    Complex s(0, 0);
    for (int u = -1; u <= 1; ++u)
        for (int v = -1; v <= 1; ++v) {
            Index lag = 2 * d + u - v;
            if (lag <= -n || lag >= n) continue;
            s += kRestrict[u + 1] * kProlong[v + 1] * c.at(lag);
        }
    return s;
}

}  // namespace

FourierCoeffs galerkin_coarse_coeffs(const FourierCoeffs& fine) {
    const Dims& nd = fine.dims();
    if (nd.size() == 1) {
        Index n = nd[0];
        Index m = (n - 1) / 2;
        CVec vals(2 * m - 1);
        for (Index d = -m + 1; d < m; ++d) vals[d + m - 1] = coarse_coeff_1d(fine, n, d);
        return FourierCoeffs({m}, std::move(vals));
    }
    Index n1 = nd[0], n2 = nd[1];
    Index m1 = (n1 - 1) / 2, m2 = (n2 - 1) / 2;
    CVec vals((2 * m1 - 1) * (2 * m2 - 1));
    for (Index d1 = -m1 + 1; d1 < m1; ++d1)
        for (Index d2 = -m2 + 1; d2 < m2; ++d2) {
            Complex s(0, 0);
            for (int u1 = -1; u1 <= 1; ++u1)
                for (int v1 = -1; v1 <= 1; ++v1) {
                    Index l1 = 2 * d1 + u1 - v1;
                    if (l1 <= -n1 || l1 >= n1) continue;
                    double w1 = kRestrict[u1 + 1] * kProlong[v1 + 1];
                    for (int u2 = -1; u2 <= 1; ++u2)
                        for (int v2 = -1; v2 <= 1; ++v2) {
                            Index l2 = 2 * d2 + u2 - v2;
                            if (l2 <= -n2 || l2 >= n2) continue;
                            s += w1 * kRestrict[u2 + 1] * kProlong[v2 + 1] * fine.at(l1, l2);
                        }
                }
            vals[(d1 + m1 - 1) * (2 * m2 - 1) + (d2 + m2 - 1)] = s;
        }
    return FourierCoeffs({m1, m2}, std::move(vals));
}

namespace {

void restrict_axis(const double* in, Index /*n*/, double* out, Index m) {
    for (Index j = 0; j < m; ++j)
        out[j] = kRestrict[0] * in[2 * j] + kRestrict[1] * in[2 * j + 1] +
                 kRestrict[2] * in[2 * j + 2];
}

void prolong_axis(const double* in, Index m, double* out, Index n) {
    for (Index i = 0; i < n; ++i) out[i] = 0.0;
    for (Index j = 0; j < m; ++j) {
        out[2 * j] += kProlong[0] * in[j];
        out[2 * j + 1] += kProlong[1] * in[j];
        out[2 * j + 2] += kProlong[2] * in[j];
    }
}

}  // namespace

Vec mg_restrict(const Dims& fine_dims, const Vec& x) {
    if (x.size() != product(fine_dims)) throw InputError("mg_restrict: length mismatch");
    if (fine_dims.size() == 1) {
        Index n = fine_dims[0], m = (n - 1) / 2;
        Vec y(m);
        restrict_axis(x.data(), n, y.data(), m);
        return y;
    }
    Index n1 = fine_dims[0], n2 = fine_dims[1];
    Index m1 = (n1 - 1) / 2, m2 = (n2 - 1) / 2;
    Vec tmp(n1 * m2);  // fast axis first
    for (Index i = 0; i < n1; ++i) restrict_axis(x.data() + i * n2, n2, tmp.data() + i * m2, m2);
    Vec y(m1 * m2);
    Vec col_in(n1), col_out(m1);
    for (Index j = 0; j < m2; ++j) {
        for (Index i = 0; i < n1; ++i) col_in[i] = tmp[i * m2 + j];
        restrict_axis(col_in.data(), n1, col_out.data(), m1);
        for (Index i = 0; i < m1; ++i) y[i * m2 + j] = col_out[i];
    }
    return y;
}

Vec mg_prolong(const Dims& coarse_dims, const Vec& x) {
    if (x.size() != product(coarse_dims)) throw InputError("mg_prolong: length mismatch");
    if (coarse_dims.size() == 1) {
        Index m = coarse_dims[0], n = 2 * m + 1;
        Vec y(n);
        prolong_axis(x.data(), m, y.data(), n);
        return y;
    }
    Index m1 = coarse_dims[0], m2 = coarse_dims[1];
    Index n1 = 2 * m1 + 1, n2 = 2 * m2 + 1;
    Vec tmp(m1 * n2);
    for (Index i = 0; i < m1; ++i) prolong_axis(x.data() + i * m2, m2, tmp.data() + i * n2, n2);
    Vec y(n1 * n2);
    Vec col_in(m1), col_out(n1);
    for (Index j = 0; j < n2; ++j) {
        for (Index i = 0; i < m1; ++i) col_in[i] = tmp[i * n2 + j];
        prolong_axis(col_in.data(), m1, col_out.data(), n1);
        for (Index i = 0; i < n1; ++i) y[i * n2 + j] = col_out[i];
    }
    return y;
}

GridHierarchy GridHierarchy::build(const ToeplitzOperator& finest, const VCycleConfig& cfg) {
    if (cfg.pre_smooth < 0 || cfg.post_smooth < 0 || cfg.pre_smooth + cfg.post_smooth < 1)
        throw InputError("VCycleConfig: pre+post smoothing sweeps must be >= 1");
    if (!(cfg.omega > 0.0 && cfg.omega <= 1.0))
        throw InputError("VCycleConfig: omega must be in (0,1]");
    if (cfg.coarsest_size < 3) throw InputError("VCycleConfig: coarsest_size >= 3 required");
    if (!finest.is_real()) throw InputError("GridHierarchy: real coefficients required");

    Index max_axis = 0;
    for (Index n : finest.dims()) {
        if (!is_pow2_minus_1(n))
            throw InputError("GridHierarchy: finest size must be 2^k - 1 per axis");
        max_axis = std::max(max_axis, n);
    }
    if (max_axis <= cfg.coarsest_size)
        throw InputError("GridHierarchy: finest size must exceed coarsest_size");

    GridHierarchy h;
    h.cfg_ = cfg;
    FourierCoeffs cur = finest.coeffs();
    while (true) {
        Index axis_max = 0;
        for (Index n : cur.dims()) axis_max = std::max(axis_max, n);
        if (axis_max <= cfg.coarsest_size) break;
        ToeplitzOperator op(cur);
        double diag = op.coeffs().at(Dims(cur.dims().size(), 0)).real();
        h.levels_.push_back({std::move(op), diag});
        cur = galerkin_coarse_coeffs(cur);
    }
    h.coarse_dims_ = cur.dims();
    h.coarse_ = ToeplitzOperator(cur).dense(1 << 20);
    h.coarse_lu_.compute(h.coarse_);
    if (!h.coarse_lu_.isInvertible())
        throw FactorizationError("GridHierarchy: singular coarsest operator");
    h.coarse_lu_t_.compute(h.coarse_.transpose());
    return h;
}

const ToeplitzOperator& GridHierarchy::level_operator(int level) const {
    if (level < 0 || level >= static_cast<int>(levels_.size()))
        throw InputError("GridHierarchy: level out of range");
    return levels_[static_cast<std::size_t>(level)].op;
}

Index GridHierarchy::size() const {
    return levels_.empty() ? product(coarse_dims_) : levels_.front().op.size();
}

Vec GridHierarchy::cycle(const Vec& r, std::size_t level, bool transposed) const {
    if (level == levels_.size())
        return transposed ? coarse_lu_t_.solve(r) : coarse_lu_.solve(r);

    const Level& lv = levels_[level];
    auto mv = [&](const Vec& v) {
        return transposed ? lv.op.apply_transpose(v) : lv.op.apply(v);
    };
    // the transpose cycle swaps the sweep counts; with a constant Jacobi
    // diagonal the smoother itself transposes to the same form on A^T
    int pre = transposed ? cfg_.post_smooth : cfg_.pre_smooth;
    int post = transposed ? cfg_.pre_smooth : cfg_.post_smooth;
    double scale = cfg_.omega / lv.jacobi_diag;

    Vec z = Vec::Zero(r.size());
    for (int s = 0; s < pre; ++s) z += scale * (r - mv(z));
    Vec residual = r - mv(z);
    const Dims& fine_dims = lv.op.dims();
    Vec zc = cycle(mg_restrict(fine_dims, residual), level + 1, transposed);
    Dims coarse_dims(fine_dims.size());
    for (std::size_t a = 0; a < fine_dims.size(); ++a) coarse_dims[a] = (fine_dims[a] - 1) / 2;
    z += mg_prolong(coarse_dims, zc);
    for (int s = 0; s < post; ++s) z += scale * (r - mv(z));
    return z;
}

Vec GridHierarchy::apply(const Vec& r) const {
    if (r.size() != size()) throw InputError("vcycle: length mismatch");
    return cycle(r, 0, false);
}

Vec GridHierarchy::apply_transpose(const Vec& r) const {
    if (r.size() != size()) throw InputError("vcycle: length mismatch");
    return cycle(r, 0, true);
}

bool spd_guard(const GridHierarchy& h) {
    Index n = h.size();
    if (n > 2048) throw SizeCapError("spd_guard: finest size exceeds 2048");
    Mat M(n, n);
    Vec e = Vec::Zero(n);
    for (Index i = 0; i < n; ++i) {
        e[i] = 1.0;
        M.col(i) = h.apply(e);
        e[i] = 0.0;
    }
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) return false;
    Eigen::LLT<Mat> llt(0.5 * (M + M.transpose()));
    return llt.info() == Eigen::Success;
}

}  // namespace symtoep
