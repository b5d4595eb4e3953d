// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "symtoep/circulant.hpp"
#include "symtoep/errors.hpp"

namespace symtoep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Index kDenseEigCap = 2048;

void check_dense_cap(Index n) {
    if (n > kDenseEigCap) throw SizeCapError("dense eigensolver capped at 2048");
}

}  // namespace

SpectrumReport preconditioned_spectrum_sym(const Mat& P, const Mat& S) {
    if (P.rows() != P.cols() || S.rows() != S.cols() || P.rows() != S.rows())
        throw InputError("preconditioned_spectrum_sym: square matrices of equal size required");
    check_dense_cap(P.rows());
    Eigen::LLT<Mat> llt(P);
    if (llt.info() != Eigen::Success)
        throw InputError("preconditioned_spectrum_sym: P is not SPD");
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(S, P, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success)
        throw FactorizationError("preconditioned_spectrum_sym: eigensolver failed");
    SpectrumReport rep;
    rep.eigenvalues = es.eigenvalues();
    rep.passed = true;
    return rep;
}

CVec preconditioned_spectrum_nonsym(const Mat& P, const Mat& A) {
    if (P.rows() != A.rows()) throw InputError("spectrum: size mismatch");
    check_dense_cap(P.rows());
    Mat M = Eigen::PartialPivLU<Mat>(P).solve(A);
    Eigen::EigenSolver<Mat> es(M, false);
    if (es.info() != Eigen::Success) throw FactorizationError("spectrum: eigensolver failed");
    CVec ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

SpectrumReport check_symeigs(const ProblemInstance& p, Index eps_grid, double epsilon_scale) {
    check_dense_cap(p.op.size());
    if (eps_grid == 0) eps_grid = p.symbol.dim() == 1 ? (Index{1} << 16) : 2048;
    SymbolViews views = derive_views(p.symbol);
    double eps = epsilon_bound(views.imag_part, views.real_part, eps_grid) * epsilon_scale;

    Mat A = p.op.dense();
    Mat P = 0.5 * (A + A.transpose());
    Mat S = p.op.dense_symmetrized();
    SpectrumReport rep = preconditioned_spectrum_sym(P, S);
    rep.epsilon = eps;

    double lo = 1.0 - 1e-8;
    double hi = 1.0 + eps + 1e-6;
    rep.bound = IntervalCheck{lo, hi, 0, 0.0};
    for (Index i = 0; i < rep.eigenvalues.size(); ++i) {
        double a = std::abs(rep.eigenvalues[i]);
        double viol = std::max(lo - a, a - hi);
        if (viol > 0) {
            ++rep.bound.violations;
            rep.bound.max_violation = std::max(rep.bound.max_violation, viol);
        }
    }

    PairingCheck pc;
    std::vector<double> pos, neg;
    for (Index i = 0; i < rep.eigenvalues.size(); ++i) {
        double v = rep.eigenvalues[i];
        if (std::abs(v) > 1.0 + 1e-8) {
            ++pc.outliers;
            (v > 0 ? pos : neg).push_back(std::abs(v));
        }
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    std::size_t m = std::min(pos.size(), neg.size());
    pc.unpaired = static_cast<Index>(pos.size() + neg.size() - 2 * m);
    for (std::size_t i = 0; i < m; ++i)
        pc.max_mismatch = std::max(pc.max_mismatch, std::abs(pos[i] - neg[i]));
    if (pc.max_mismatch > 1e-8) pc.unpaired = std::max<Index>(pc.unpaired, 1);
    rep.pairing = pc;

    rep.passed = rep.bound.violations == 0 && pc.unpaired == 0;
    return rep;
}

SpectrumReport check_absfeigs(const Symbol& f, Index n_small, int oversample) {
    check_dense_cap(n_small);
    SymbolViews views = derive_views(f);
    FourierCoeffs tc = fourier_coeffs(views.normalized, Dims(f.dim(), n_small), oversample);
    ToeplitzOperator T(std::move(tc));
    Mat S = T.dense_symmetrized();
    S = 0.5 * (S + S.transpose());  // symmetric up to quadrature rounding
    Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw FactorizationError("check_absfeigs: solver failed");

    SpectrumReport rep;
    rep.eigenvalues = es.eigenvalues();
    rep.bound = IntervalCheck{-1.0 - 1e-6, 1.0 + 1e-6, 0, 0.0};
    Index cluster = 0;
    for (Index i = 0; i < rep.eigenvalues.size(); ++i) {
        double v = rep.eigenvalues[i];
        double viol = std::max(rep.bound.lo - v, v - rep.bound.hi);
        if (viol > 0) {
            ++rep.bound.violations;
            rep.bound.max_violation = std::max(rep.bound.max_violation, viol);
        }
        if (std::min(std::abs(v - 1.0), std::abs(v + 1.0)) < 0.05) ++cluster;
    }
    rep.cluster_fraction =
        static_cast<double>(cluster) / static_cast<double>(rep.eigenvalues.size());
    rep.passed = rep.bound.violations == 0;
    return rep;
}

namespace {

// ternary refinement of an extremum of f/g inside the grid cell around index i
double refine_ratio_extremum(const Symbol& f, const Symbol& g, double t_lo, double t_hi,
                             bool maximize) {
    auto ratio = [&](double t) {
        double gv = g(t).real();
        double fv = f(t).real();
        double r = fv / gv;
        return maximize ? r : -r;
    };
    for (int it = 0; it < 200 && t_hi - t_lo > 1e-15; ++it) {
        double m1 = t_lo + (t_hi - t_lo) / 3;
        double m2 = t_hi - (t_hi - t_lo) / 3;
        if (ratio(m1) < ratio(m2))
            t_lo = m1;
        else
            t_hi = m2;
    }
    double t = 0.5 * (t_lo + t_hi);
    return f(t).real() / g(t).real();
}

}  // namespace

SpectrumReport check_eigfunction_lemma(const Symbol& f, const Symbol& g, Index n_small) {
    if (f.dim() != 1 || g.dim() != 1)
        throw InputError("check_eigfunction_lemma: 1-d symbols required");
    check_dense_cap(n_small);

    const Index G = Index{1} << 16;
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = -rmin;
    Index imin = 0, imax = 0;
    for (Index i = 0; i < G; ++i) {
        double t = -kPi + 2 * kPi * static_cast<double>(i) / static_cast<double>(G);
        double gv = g(t).real();
        if (gv < -1e-13) throw AssumptionError("check_eigfunction_lemma: g negative on grid");
        if (gv <= 1e-13) continue;
        double r = f(t).real() / gv;
        if (r < rmin) {
            rmin = r;
            imin = i;
        }
        if (r > rmax) {
            rmax = r;
            imax = i;
        }
    }
    auto cell = [&](Index i) {
        double lo = -kPi + 2 * kPi * static_cast<double>(i - 1) / static_cast<double>(G);
        double hi = -kPi + 2 * kPi * static_cast<double>(i + 1) / static_cast<double>(G);
        return std::pair{std::max(lo, -kPi), std::min(hi, kPi)};
    };
    auto [lo0, hi0] = cell(imin);
    double r = std::min(rmin, refine_ratio_extremum(f, g, lo0, hi0, false));
    auto [lo1, hi1] = cell(imax);
    double R = std::max(rmax, refine_ratio_extremum(f, g, lo1, hi1, true));

    // real-valued symbols have Hermitian (complex when not even) coefficient
    // tensors, so the pencil is complex Hermitian in general
    CMat Af = ToeplitzOperator(fourier_coeffs(f, {n_small})).dense_complex();
    CMat Ag = ToeplitzOperator(fourier_coeffs(g, {n_small})).dense_complex();
    Af = 0.5 * (Af + Af.adjoint()).eval();
    Ag = 0.5 * (Ag + Ag.adjoint()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> es(Af, Ag,
                                                      Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success)
        throw FactorizationError("check_eigfunction_lemma: eigensolver failed");
    SpectrumReport rep;
    rep.eigenvalues = es.eigenvalues();
    rep.bound = IntervalCheck{r - 1e-9, R + 1e-9, 0, 0.0};
    for (Index i = 0; i < rep.eigenvalues.size(); ++i) {
        double v = rep.eigenvalues[i];
        double viol = std::max(rep.bound.lo - v, v - rep.bound.hi);
        if (viol > 0) {
            ++rep.bound.violations;
            rep.bound.max_violation = std::max(rep.bound.max_violation, viol);
        }
    }
    rep.passed = rep.bound.violations == 0;
    return rep;
}

std::vector<double> strang_abs_error_curve(const Symbol& f, std::span<const Index> sizes) {
    if (f.dim() != 1) throw InputError("strang_abs_error_curve: 1-d symbol required");

    // empirical Wiener-class check: per-octave decay of the coefficient tails
    {
        const Index K = 10000;
        FourierCoeffs c = fourier_coeffs(f, {K + 1});
        double mid = 0, tail = 0, all = 0;
        for (Index k = -K; k <= K; ++k) {
            double a = std::abs(c.at(k));
            all += a;
            Index ak = std::abs(k);
            if (ak > K / 4 && ak <= K / 2) mid += a;
            if (ak > K / 2) tail += a;
        }
        if (tail > 0.98 * mid + 1e-14 * all)
            throw AssumptionError(
                "strang_abs_error_curve: coefficients show no summable tail decay");
    }

    SymbolViews views = derive_views(f);
    std::vector<double> errs;
    errs.reserve(sizes.size());
    for (Index n : sizes) {
        ToeplitzOperator T(fourier_coeffs(f, {n}));
        CVec eigs = strang(T).eigs();
        double emax = 0;
        for (Index j = 0; j < n; ++j) {
            double t = 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
            if (t > kPi) t -= 2 * kPi;
            emax = std::max(emax, std::abs(std::abs(eigs[j]) - views.modulus(t).real()));
        }
        errs.push_back(emax);
    }
    return errs;
}

namespace {

std::string format_double17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string format_spectrum(const CVec& eigs) {
    std::string out;
    for (Index i = 0; i < eigs.size(); ++i) {
        out += format_double17(eigs[i].real());
        out += ' ';
        out += format_double17(eigs[i].imag());
        out += '\n';
    }
    return out;
}

std::string format_spectrum(const Vec& eigs) {
    std::string out;
    for (Index i = 0; i < eigs.size(); ++i) {
        out += format_double17(eigs[i]);
        out += " 0\n";
    }
    return out;
}

namespace {
void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("write_spectrum: cannot open " + path.string());
    os << text;
}
}  // namespace

void write_spectrum(const std::filesystem::path& path, const CVec& eigs) {
    write_text(path, format_spectrum(eigs));
}

void write_spectrum(const std::filesystem::path& path, const Vec& eigs) {
    write_text(path, format_spectrum(eigs));
}

}  // namespace symtoep
