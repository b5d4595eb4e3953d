// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/verify.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>

#include "symtoep/bench.hpp"
#include "symtoep/circulant.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/krylov.hpp"
#include "symtoep/multigrid.hpp"
#include "symtoep/problems.hpp"
#include "symtoep/rng.hpp"
#include "symtoep/spectral.hpp"

namespace symtoep::verify {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Timer {
    Clock::time_point t0 = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

CriterionResult timed(int id, std::string name, const std::function<bool(std::string&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    Timer t;
    try {
        r.passed = body(r.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = t.seconds();
    return r;
}

// ---------------------------------------------------------------- criterion 1

const double kBoundTable[4][4] = {
    // (0,3)  (1,3)  (0.5,1) (1,1)
    {1.13, 0.67, 0.25, 0.00},  // alpha 1
    {0.70, 0.39, 0.17, 0.00},  // alpha 1.25
    {0.42, 0.23, 0.11, 0.00},  // alpha 1.5
    {0.20, 0.11, 0.05, 0.00},  // alpha 1.75
};
const double kBoundAlphas[4] = {1.0, 1.25, 1.5, 1.75};
const std::pair<double, double> kBoundWeights[4] = {{0, 3}, {1, 3}, {0.5, 1}, {1, 1}};

CriterionResult criterion1(const VerifyOptions&) {
    return timed(1, "inclusion-bound table (16 entries, +-0.005)", [&](std::string& detail) {
        Timer t;
        double worst = 0;
        bool ok = true;
        for (int ia = 0; ia < 4; ++ia)
            for (int iw = 0; iw < 4; ++iw) {
                Symbol s = example2_symbol(kBoundAlphas[ia], kBoundWeights[iw].first,
                                           kBoundWeights[iw].second, 1.0);
                SymbolViews v = derive_views(s);
                double eps = epsilon_bound(v.imag_part, v.real_part, Index{1} << 16);
                double err = std::abs(eps - kBoundTable[ia][iw]);
                worst = std::max(worst, err);
                if (err > 0.005) ok = false;
            }
        double secs = t.seconds();
        std::ostringstream os;
        os << "max deviation " << worst << ", " << secs << " s";
        detail = os.str();
        return ok && secs < 5.0;
    });
}

// ---------------------------------------------------------------- criterion 2

CriterionResult criterion2(const VerifyOptions& opts) {
    return timed(2, "symmetrized inclusion, 1D (n = 512)", [&](std::string& detail) {
        Timer t;
        bool ok = true;
        std::ostringstream os;
        auto check = [&](const ProblemInstance& p, const std::string& tag) {
            SpectrumReport rep = check_symeigs(p, 0, opts.epsilon_scale);
            if (!rep.passed) {
                ok = false;
                os << tag << ": " << rep.bound.violations << " violations (max "
                   << rep.bound.max_violation << "), unpaired "
                   << (rep.pairing ? rep.pairing->unpaired : -1) << "; ";
            }
        };
        check(example1(512, 7), "ex1");
        for (double a : {1.25, 1.5, 1.75})
            for (auto [dp, dm] : kBoundWeights) {
                if (dp == 0 && dm == 0) continue;
                std::ostringstream tag;
                tag << "ex2 a=" << a << " (" << dp << "," << dm << ")";
                check(example2(512, a, dp, dm), tag.str());
            }
        double secs = t.seconds();
        if (ok) os << "13 spectra inside bounds";
        os << ", " << secs << " s";
        detail = os.str();
        return ok && secs < 120.0;
    });
}

// ---------------------------------------------------------------- criterion 3

CriterionResult criterion3(const VerifyOptions& opts) {
    return timed(3, "symmetrized inclusion, 2D (n = 15x15)", [&](std::string& detail) {
        bool ok = true;
        std::ostringstream os;
        const double weights[2][4] = {{2.0, 0.5, 0.3, 1.0}, {0.3, 1.0, 2.0, 0.5}};
        for (auto [a, b] : {std::pair{1.5, 1.25}, std::pair{1.5, 1.75}})
            for (const auto& w : weights) {
                ProblemInstance p = example3(15, a, b, w[0], w[1], w[2], w[3]);
                SpectrumReport rep = check_symeigs(p, 0, opts.epsilon_scale);
                if (!rep.passed) {
                    ok = false;
                    os << "(" << a << "," << b << "): " << rep.bound.violations
                       << " violations; ";
                }
            }
        if (ok) os << "4 spectra inside bounds";
        detail = os.str();
        return ok;
    });
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion4(const VerifyOptions&) {
    return timed(4, "normalized-symbol inclusion in [-1,1] (n = 512)",
                 [&](std::string& detail) {
                     bool ok = true;
                     std::ostringstream os;
                     auto check = [&](const Symbol& s, const std::string& tag) {
                         SpectrumReport rep = check_absfeigs(s, 512);
                         if (!rep.passed) {
                             ok = false;
                             os << tag << ": max violation " << rep.bound.max_violation << "; ";
                         }
                     };
                     check(example1_symbol(), "ex1");
                     for (double a : {1.25, 1.5, 1.75})
                         check(example2(512, a, 0.5, 1.0).symbol, "ex2");
                     if (ok) os << "all eigenvalues in [-1-1e-6, 1+1e-6]";
                     detail = os.str();
                     return ok;
                 });
}

// ---------------------------------------------------------------- criterion 5

CriterionResult criterion5(const VerifyOptions&) {
    return timed(5, "absolute-value Strang convergence", [&](std::string& detail) {
        Symbol s = example2_symbol(1.5, 0.5, 1.0, 1.0);
        const Index sizes[] = {127, 511, 2047, 8191};
        std::vector<double> errs = strang_abs_error_curve(s, sizes);
        bool dec = true;
        for (std::size_t i = 1; i < errs.size(); ++i) dec &= errs[i] < errs[i - 1];
        bool ok = dec && errs.back() < 1e-2;
        std::ostringstream os;
        os << "errors";
        for (double e : errs) os << " " << e;
        detail = os.str();
        return ok;
    });
}

// ------------------------------------------------------------- criteria 6-9

bool within(int got, int want, double rel, int abs_slack) {
    double slack = std::max(rel * want, static_cast<double>(abs_slack));
    return std::abs(got - want) <= slack;
}

CriterionResult criterion6(const VerifyOptions& opts) {
    return timed(6, "iteration counts, tridiagonal symmetric-part preconditioner", [&](std::string& detail) {
        Timer t;
        const int want_minres[4] = {68, 70, 71, 72};
        const int want_gmres[4] = {67, 68, 69, 72};
        bench::RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {1023, 2047, 4095, 8191};
        cfg.precond = bench::Precond::ar;
        cfg.maxit = opts.maxit;
        cfg.solver = bench::Solver::minres;
        auto rows_m = bench::run(cfg);
        cfg.solver = bench::Solver::gmres;
        auto rows_g = bench::run(cfg);
        bool ok = true;
        std::ostringstream os;
        os << "minres";
        for (int i = 0; i < 4; ++i) {
            os << " " << rows_m[i].iterations;
            ok &= rows_m[i].converged && within(rows_m[i].iterations, want_minres[i], 0.10, 5);
        }
        os << ", gmres";
        for (int i = 0; i < 4; ++i) {
            os << " " << rows_g[i].iterations;
            ok &= rows_g[i].converged && within(rows_g[i].iterations, want_gmres[i], 0.10, 5);
        }
        double secs = t.seconds();
        os << ", " << secs << " s";
        detail = os.str();
        return ok && secs < 60.0;
    });
}

CriterionResult criterion7(const VerifyOptions& opts) {
    return timed(7, "iteration counts, exact modulus preconditioner", [&](std::string& detail) {
        const int want[3] = {11, 11, 12};
        bench::RunConfig cfg;
        cfg.example = 1;
        cfg.sizes = {1023, 2047, 4095};
        cfg.solver = bench::Solver::minres;
        cfg.precond = bench::Precond::am_exact;
        cfg.maxit = opts.maxit;
        auto rows = bench::run(cfg);
        bool ok = true;
        std::ostringstream os;
        os << "minres";
        for (int i = 0; i < 3; ++i) {
            os << " " << rows[i].iterations;
            ok &= rows[i].converged && within(rows[i].iterations, want[i], 0.0, 3);
        }
        detail = os.str();
        return ok;
    });
}

CriterionResult criterion8(const VerifyOptions& opts) {
    return timed(8, "mesh independence of multigrid on the symmetric part", [&](std::string& detail) {
        bool ok = true;
        std::ostringstream os;
        for (double a : {1.25, 1.5, 1.75}) {
            bench::RunConfig cfg;
            cfg.example = 2;
            cfg.sizes = {1023, 4095, 16383};
            cfg.alpha = a;
            cfg.d_plus = 0.5;
            cfg.d_minus = 1.0;
            cfg.solver = bench::Solver::minres;
            cfg.precond = bench::Precond::mg_ar;
            cfg.maxit = opts.maxit;
            auto rows = bench::run(cfg);
            int lo = rows[0].iterations, hi = rows[0].iterations;
            os << "a=" << a << ":";
            for (const auto& r : rows) {
                os << " " << r.iterations;
                lo = std::min(lo, r.iterations);
                hi = std::max(hi, r.iterations);
                ok &= r.converged && r.iterations <= 15;
            }
            ok &= (hi - lo) <= 3;
            os << "; ";
        }
        detail = os.str();
        return ok;
    });
}

CriterionResult criterion9(const VerifyOptions& opts) {
    return timed(9, "2d block circulant vs multigrid trend", [&](std::string& detail) {
        bench::RunConfig cfg;
        cfg.example = 3;
        cfg.sizes = {31, 127};
        cfg.alpha = 1.5;
        cfg.beta = 1.75;
        cfg.solver = bench::Solver::minres;
        cfg.maxit = opts.maxit;
        cfg.precond = bench::Precond::block_circ_abs;
        auto rows_c = bench::run(cfg);
        cfg.precond = bench::Precond::mg_ar;
        auto rows_m = bench::run(cfg);
        bool ok = rows_c[0].converged && rows_c[1].converged &&
                  rows_c[1].iterations > rows_c[0].iterations;
        ok &= rows_m[0].converged && rows_m[1].converged &&
              std::abs(rows_m[1].iterations - rows_m[0].iterations) <= 2;
        std::ostringstream os;
        os << "block-circ-abs " << rows_c[0].iterations << " -> " << rows_c[1].iterations
           << " (increasing), mg-ar " << rows_m[0].iterations << " -> "
           << rows_m[1].iterations << " (within 2)";
        detail = os.str();
        return ok;
    });
}

// --------------------------------------------------------------- criterion 10

Symbol random_trig_poly(SplitMix64& rng, bool positive) {
    int band = 1 + static_cast<int>(rng.next() % 5);
    auto coefs = std::make_shared<std::vector<double>>();
    coefs->push_back(2 * rng.uniform() - 1);
    for (int k = 1; k <= band; ++k) coefs->push_back(2 * rng.uniform() - 1);
    if (positive) {
        double sum = 0;
        for (int k = 1; k <= band; ++k) sum += std::abs((*coefs)[k]);
        (*coefs)[0] = 2 * sum + 0.5 + rng.uniform();
    }
    auto eval = [coefs](double t) {
        double v = (*coefs)[0];
        for (std::size_t k = 1; k < coefs->size(); ++k)
            v += 2 * (*coefs)[k] * std::cos(static_cast<double>(k) * t);
        return Complex(v, 0);
    };
    auto coeff = [coefs](std::span<const Index> j) -> Complex {
        Index k = std::abs(j[0]);
        if (k >= static_cast<Index>(coefs->size())) return {0, 0};
        return {(*coefs)[static_cast<std::size_t>(k)], 0};
    };
    return Symbol::from_function(eval, coeff);
}

CriterionResult criterion10(const VerifyOptions&) {
    return timed(10, "generalized eigenvalue bounds (50 random pairs)",
                 [&](std::string& detail) {
                     SplitMix64 rng(20260810ULL);
                     int bad = 0;
                     double worst = 0;
                     for (int trial = 0; trial < 50; ++trial) {
                         Symbol f = random_trig_poly(rng, false);
                         Symbol g = random_trig_poly(rng, true);
                         SpectrumReport rep = check_eigfunction_lemma(f, g, 128);
                         if (!rep.passed) {
                             ++bad;
                             worst = std::max(worst, rep.bound.max_violation);
                         }
                     }
                     std::ostringstream os;
                     os << (50 - bad) << "/50 inside (r,R)";
                     if (bad) os << ", worst violation " << worst;
                     detail = os.str();
                     return bad == 0;
                 });
}

// --------------------------------------------------------------- criterion 11

CriterionResult criterion11(const VerifyOptions&) {
    return timed(11, "structural property fuzz suite", [&](std::string& detail) {
        SplitMix64 rng(0xabcdefULL);
        std::ostringstream os;

        // flip involution + permutation property, 1000 cases
        for (int t = 0; t < 1000; ++t) {
            Dims dims;
            if (rng.next() % 2 == 0) {
                dims = {2 + static_cast<Index>(rng.next() % 63)};
            } else {
                dims = {2 + static_cast<Index>(rng.next() % 15),
                        2 + static_cast<Index>(rng.next() % 15)};
            }
            Vec x = gaussian_vector(rng.next(), product(dims));
            Vec fx = flip(dims, x);
            if ((flip(dims, fx) - x).cwiseAbs().maxCoeff() != 0.0) {
                detail = "flip involution failed";
                return false;
            }
            Vec xs = x, fs = fx;
            std::sort(xs.data(), xs.data() + xs.size());
            std::sort(fs.data(), fs.data() + fs.size());
            if ((xs - fs).cwiseAbs().maxCoeff() != 0.0) {
                detail = "flip is not a permutation";
                return false;
            }
        }
        os << "flip x1000";

        // symmetrized symmetry and FFT-vs-dense matvec, 100 cases per shape class
        double worst_sym = 0, worst_mv = 0;
        for (int shape = 0; shape < 2; ++shape) {
            for (int t = 0; t < 100; ++t) {
                Dims dims = shape == 0 ? Dims{3 + static_cast<Index>(rng.next() % 62)}
                                       : Dims{3 + static_cast<Index>(rng.next() % 6),
                                              3 + static_cast<Index>(rng.next() % 6)};
                Index total = 1;
                for (Index n : dims) total *= 2 * n - 1;
                CVec vals = gaussian_vector(rng.next(), total).cast<Complex>();
                ToeplitzOperator T{FourierCoeffs(dims, std::move(vals))};
                Mat S = T.dense_symmetrized();
                worst_sym = std::max(worst_sym, (S - S.transpose()).cwiseAbs().maxCoeff());
                Vec x = gaussian_vector(rng.next(), T.size());
                Vec y = T.apply(x);
                Vec yd = T.dense() * x;
                worst_mv =
                    std::max(worst_mv, (y - yd).norm() / std::max(1e-300, yd.norm()));
            }
        }
        if (worst_sym >= 1e-14) {
            detail = "symmetrized asymmetry " + std::to_string(worst_sym);
            return false;
        }
        if (worst_mv >= 1e-12) {
            detail = "matvec deviation " + std::to_string(worst_mv);
            return false;
        }
        os << ", symmetry " << worst_sym << ", matvec " << worst_mv;

        // residual monotonicity and finite termination on small systems
        for (int t = 0; t < 20; ++t) {
            Index n = 8 + static_cast<Index>(rng.next() % 57);
            CVec vals = (0.3 * gaussian_vector(rng.next(), 2 * n - 1)).cast<Complex>();
            vals[n - 1] += Complex(2 * n, 0);  // diagonally dominant, well-conditioned
            ToeplitzOperator T{FourierCoeffs({n}, std::move(vals))};
            Vec b = gaussian_vector(rng.next(), n);
            auto P = PreconditionerHandle::identity(n);
            SolveOptions so;
            so.tol = 1e-10;
            so.maxit = static_cast<int>(n) + 1;
            so.tol_mode = ToleranceMode::relative;

            LinearOperator S{n, [&T](const Vec& v) { return T.apply_symmetrized(v); },
                             nullptr, true};
            auto rm = minres(S, P, flip({n}, b), so);
            LinearOperator H{n, [&T](const Vec& v) { return T.apply(v); },
                             [&T](const Vec& v) { return T.apply_transpose(v); }, false};
            auto rg = gmres_right(H, P, b, so);
            auto rl = lsqr(H, P, b, so);
            if (!rm.converged || !rg.converged || !rl.converged) {
                detail = "finite termination failed at n = " + std::to_string(n);
                return false;
            }
            for (std::size_t i = 1; i < rm.residual_history.size(); ++i)
                if (rm.residual_history[i] > rm.residual_history[i - 1] + 1e-14) {
                    detail = "minres residual not monotone";
                    return false;
                }
            for (std::size_t i = 1; i < rg.residual_history.size(); ++i)
                if (rg.residual_history[i] > rg.residual_history[i - 1] + 1e-14) {
                    detail = "gmres residual not monotone";
                    return false;
                }
        }
        os << ", solvers x20";
        detail = os.str();
        return true;
    });
}

}  // namespace

std::vector<CriterionResult> run_theorems_suite(const VerifyOptions& opts) {
    return {criterion1(opts), criterion2(opts),  criterion3(opts), criterion4(opts),
            criterion5(opts), criterion10(opts), criterion11(opts)};
}

std::vector<CriterionResult> run_tables_suite(const VerifyOptions& opts) {
    return {criterion6(opts), criterion7(opts), criterion8(opts), criterion9(opts)};
}

std::vector<CriterionResult> run_all(const VerifyOptions& opts) {
    std::vector<CriterionResult> all = run_theorems_suite(opts);
    std::vector<CriterionResult> tables = run_tables_suite(opts);
    all.insert(all.end(), tables.begin(), tables.end());
    std::sort(all.begin(), all.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    return all;
}

std::string render_report(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name;
        if (!r.detail.empty()) os << " [" << r.detail << "]";
        os << "\n";
    }
    return os.str();
}

std::string render_json_report(const std::vector<CriterionResult>& results) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results)
        j.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
    return j.dump(2) + "\n";
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace symtoep::verify
