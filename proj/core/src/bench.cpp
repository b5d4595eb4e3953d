// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/bench.hpp"

#include <json.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <charconv>
#include <chrono>
#include <memory>
#include <cstdlib>
#include <sstream>
#include <atomic>
#include <thread>

#include "symtoep/banded.hpp"
#include "symtoep/circulant.hpp"
#include "symtoep/errors.hpp"
#include "symtoep/multigrid.hpp"
#include "symtoep/spectral.hpp"

namespace symtoep::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string to_string(Solver s) {
    switch (s) {
        case Solver::minres: return "minres";
        case Solver::gmres: return "gmres";
        case Solver::lsqr: return "lsqr";
    }
    throw ConfigError("unknown solver");
}

Solver solver_from_string(const std::string& s) {
    if (s == "minres") return Solver::minres;
    if (s == "gmres") return Solver::gmres;
    if (s == "lsqr") return Solver::lsqr;
    throw ConfigError("unknown solver: " + s);
}

namespace {
const std::pair<Precond, const char*> kPrecondNames[] = {
    {Precond::none, "none"},
    {Precond::ar, "ar"},
    {Precond::am_exact, "am-exact"},
    {Precond::am_banded, "am-banded"},
    {Precond::circ_strang, "circ-strang"},
    {Precond::circ_optimal, "circ-optimal"},
    {Precond::circ_superoptimal, "circ-superoptimal"},
    {Precond::circ_abs_strang, "circ-abs-strang"},
    {Precond::circ_abs_optimal, "circ-abs-optimal"},
    {Precond::circ_abs_superoptimal, "circ-abs-superoptimal"},
    {Precond::block_circ, "block-circ"},
    {Precond::block_circ_abs, "block-circ-abs"},
    {Precond::mg_a, "mg-a"},
    {Precond::mg_ar, "mg-ar"},
    {Precond::mg_am, "mg-am"},
};
}  // namespace

std::string to_string(Precond p) {
    for (auto& [k, name] : kPrecondNames)
        if (k == p) return name;
    throw ConfigError("unknown preconditioner");
}

Precond precond_from_string(const std::string& s) {
    for (auto& [k, name] : kPrecondNames)
        if (s == name) return k;
    throw ConfigError("unknown preconditioner: " + s);
}

namespace {

ProblemInstance build_instance(const RunConfig& cfg, Index n) {
    switch (cfg.example) {
        case 1:
            return example1(n, cfg.seed);
        case 2:
            return example2(n, cfg.alpha.value_or(1.5), cfg.d_plus.value_or(0.5),
                            cfg.d_minus.value_or(1.0));
        case 3:
            return example3(n, cfg.alpha.value_or(1.5), cfg.beta.value_or(1.75),
                            cfg.d_plus.value_or(2.0), cfg.d_minus.value_or(0.5),
                            cfg.e_plus.value_or(0.3), cfg.e_minus.value_or(1.0));
        default:
            throw ConfigError("example must be 1, 2 or 3");
    }
}

struct MgDefaults {
    int pre, post;
    double omega;
    Index coarsest;
};

MgDefaults mg_defaults(int example, Precond kind, Solver solver) {
    // smoothing defaults are tuned per problem family and per solver
    if (example == 1) {
        double omega = solver == Solver::gmres ? 0.1 : (solver == Solver::lsqr ? 0.4 : 0.5);
        return {2, 2, omega, 15};
    }
    if (example == 2) {
        if (kind == Precond::mg_am) return {1, 1, 0.7, 127};
        if (kind == Precond::mg_a && solver == Solver::lsqr) return {1, 1, 0.6, 127};
        return {2, 2, 0.7, 127};
    }
    return {4, 4, 0.9, 7};
}

VCycleConfig resolve_mg(const RunConfig& cfg, Precond kind, const ProblemInstance& inst) {
    MgDefaults d = mg_defaults(inst.meta.example, kind, cfg.solver);
    VCycleConfig v;
    v.pre_smooth = cfg.mg.pre_smooth.value_or(d.pre);
    v.post_smooth = cfg.mg.post_smooth.value_or(d.post);
    v.omega = cfg.mg.omega.value_or(d.omega);
    v.coarsest_size = cfg.mg.coarsest.value_or(d.coarsest);
    return v;
}

PreconditionerHandle from_circulant(CirculantOperator c, bool spd) {
    auto sc = std::make_shared<CirculantOperator>(std::move(c));
    return PreconditionerHandle{
        sc->size(), [sc](const Vec& v) { return sc->solve(v); },
        [sc](const Vec& v) { return sc->solve_transpose(v); }, spd};
}

PreconditionerHandle from_block(BlockCirculant2D b, bool spd) {
    auto sb = std::make_shared<BlockCirculant2D>(std::move(b));
    return PreconditionerHandle{
        sb->size(), [sb](const Vec& v) { return sb->solve(v); },
        [sb](const Vec& v) { return sb->solve_transpose(v); }, spd};
}

PreconditionerHandle from_hierarchy(GridHierarchy h, bool spd) {
    auto sh = std::make_shared<GridHierarchy>(std::move(h));
    return PreconditionerHandle{
        sh->size(), [sh](const Vec& v) { return sh->apply(v); },
        [sh](const Vec& v) { return sh->apply_transpose(v); }, spd};
}

PreconditionerHandle from_banded(BandedCholesky f) {
    auto sf = std::make_shared<BandedCholesky>(std::move(f));
    return PreconditionerHandle{
        sf->size(), [sf](const Vec& v) { return sf->solve(v); },
        [sf](const Vec& v) { return sf->solve(v); }, true};
}

PreconditionerHandle from_dense_cholesky(const Mat& A) {
    auto llt = std::make_shared<Eigen::LLT<Mat>>(A);
    if (llt->info() != Eigen::Success)
        throw FactorizationError("dense preconditioner is not positive definite");
    return PreconditionerHandle{
        A.rows(), [llt](const Vec& v) { return llt->solve(v); },
        [llt](const Vec& v) { return llt->solve(v); }, true};
}

/// Effective symmetric bandwidth of real Toeplitz coefficients.
Index coeff_bandwidth(const FourierCoeffs& c) {
    Index n = c.dims()[0];
    double scale = c.values().cwiseAbs().maxCoeff();
    Index b = 0;
    for (Index k = 1; k < n; ++k)
        if (std::abs(c.at(k)) > 1e-14 * scale || std::abs(c.at(-k)) > 1e-14 * scale) b = k;
    return b;
}

PreconditionerHandle build_ar(const ProblemInstance& inst) {
    ToeplitzOperator ar = inst.op.symmetric_part();
    if (ar.rank() == 1) {
        Index b = coeff_bandwidth(ar.coeffs());
        if (b <= 512) {
            Vec band(b + 1);
            for (Index k = 0; k <= b; ++k) band[k] = ar.coeffs().at(k).real();
            return from_banded(BandedCholesky::factor_toeplitz(band, ar.size()));
        }
    }
    return from_dense_cholesky(ar.dense());
}

Symbol modulus_view(const ProblemInstance& inst) { return derive_views(inst.symbol).modulus; }

}  // namespace

BuiltPreconditioner build_preconditioner(Precond kind, const ProblemInstance& inst,
                                         Solver solver, const MgOverrides& mg_over) {
    auto t0 = Clock::now();
    RunConfig tmp;
    tmp.mg = mg_over;
    tmp.solver = solver;
    PreconditionerHandle h;
    switch (kind) {
        case Precond::none:
            h = PreconditionerHandle::identity(inst.op.size());
            break;
        case Precond::ar:
            h = build_ar(inst);
            break;
        case Precond::am_exact: {
            if (inst.op.size() > ToeplitzOperator::kDenseCap)
                throw SizeCapError("am-exact: dense cap exceeded");
            ToeplitzOperator am(fourier_coeffs(modulus_view(inst), inst.op.dims()));
            h = from_dense_cholesky(am.dense());
            break;
        }
        case Precond::am_banded: {
            if (inst.op.rank() != 1) throw ConfigError("am-banded: 1-level operators only");
            BandedApproximation ba =
                banded_am(modulus_view(inst), inst.op.size(), inst.meta.alpha);
            Index b = ba.bandwidth - 1;
            Vec band(b + 1);
            for (Index k = 0; k <= b; ++k) band[k] = ba.op.coeffs().at(k).real();
            h = from_banded(BandedCholesky::factor_toeplitz(band, inst.op.size()));
            break;
        }
        case Precond::circ_strang:
        case Precond::circ_optimal:
        case Precond::circ_superoptimal:
        case Precond::circ_abs_strang:
        case Precond::circ_abs_optimal:
        case Precond::circ_abs_superoptimal: {
            if (inst.op.rank() != 1)
                throw ConfigError("circulant preconditioners need a 1-level operator");
            CirculantOperator c =
                (kind == Precond::circ_strang || kind == Precond::circ_abs_strang)
                    ? strang(inst.op)
                    : ((kind == Precond::circ_optimal || kind == Precond::circ_abs_optimal)
                           ? optimal(inst.op)
                           : superoptimal(inst.op));
            bool abs = kind == Precond::circ_abs_strang || kind == Precond::circ_abs_optimal ||
                       kind == Precond::circ_abs_superoptimal;
            if (abs) c = c.absolute_value();
            h = from_circulant(std::move(c), abs);
            break;
        }
        case Precond::block_circ:
        case Precond::block_circ_abs: {
            if (inst.meta.example != 3) throw ConfigError("block circulants are 2D-only");
            Index n = inst.meta.dims[0];
            FourierCoeffs lx = example3_level_coeffs(n, inst.meta.alpha, inst.meta.d_plus,
                                                     inst.meta.d_minus, inst.meta.tau);
            FourierCoeffs ly = example3_level_coeffs(n, inst.meta.beta, inst.meta.e_plus,
                                                     inst.meta.e_minus, inst.meta.tau);
            bool abs = kind == Precond::block_circ_abs;
            h = from_block(block2d(abs ? BlockCirculant2D::Kind::abs
                                       : BlockCirculant2D::Kind::nonsym,
                                   lx, ly, inst.meta.dims),
                           abs);
            break;
        }
        case Precond::mg_a: {
            VCycleConfig v = resolve_mg(tmp, kind, inst);
            h = from_hierarchy(GridHierarchy::build(inst.op, v), false);
            break;
        }
        case Precond::mg_ar: {
            VCycleConfig v = resolve_mg(tmp, kind, inst);
            bool spd = v.pre_smooth == v.post_smooth;
            h = from_hierarchy(GridHierarchy::build(inst.op.symmetric_part(), v), spd);
            break;
        }
        case Precond::mg_am: {
            VCycleConfig v = resolve_mg(tmp, kind, inst);
            bool spd = v.pre_smooth == v.post_smooth;
            ToeplitzOperator am =
                (inst.meta.example == 2)
                    ? banded_am(modulus_view(inst), inst.op.dims()[0], inst.meta.alpha).op
                    : ToeplitzOperator(fourier_coeffs(modulus_view(inst), inst.op.dims()));
            h = from_hierarchy(GridHierarchy::build(am, v), spd);
            break;
        }
        default:
            throw ConfigError("unknown preconditioner kind");
    }
    return BuiltPreconditioner{std::move(h), seconds_since(t0)};
}

namespace {

ResultRow run_one(const RunConfig& cfg, Index n) {
    ProblemInstance inst = build_instance(cfg, n);
    BuiltPreconditioner bp = build_preconditioner(cfg.precond, inst, cfg.solver, cfg.mg);

    if (cfg.solver == Solver::minres && !bp.handle.spd)
        throw ConfigError("minres requires an SPD preconditioner (got " +
                          to_string(cfg.precond) + ")");

    SolveOptions opts;
    opts.tol = cfg.tol;
    opts.maxit = cfg.maxit;
    opts.tol_mode = cfg.tol_mode;

    const ToeplitzOperator& A = inst.op;
    SolveReport rep;
    if (cfg.solver == Solver::minres) {
        LinearOperator S{A.size(), [&A](const Vec& v) { return A.apply_symmetrized(v); },
                         nullptr, true};
        Vec bs = flip(A.dims(), inst.rhs);
        rep = minres(S, bp.handle, bs, opts);
    } else {
        LinearOperator H{A.size(), [&A](const Vec& v) { return A.apply(v); },
                         [&A](const Vec& v) { return A.apply_transpose(v); }, false};
        rep = cfg.solver == Solver::gmres ? gmres_right(H, bp.handle, inst.rhs, opts)
                                          : lsqr(H, bp.handle, inst.rhs, opts);
    }

    ResultRow row;
    row.example = cfg.example;
    row.n = n;
    row.alpha = inst.meta.alpha;
    row.beta = inst.meta.beta;
    row.d_plus = inst.meta.d_plus;
    row.d_minus = inst.meta.d_minus;
    row.e_plus = inst.meta.e_plus;
    row.e_minus = inst.meta.e_minus;
    row.solver = to_string(cfg.solver);
    row.precond = to_string(cfg.precond);
    row.tol = cfg.tol;
    row.maxit = cfg.maxit;
    row.seed = cfg.seed;
    row.iterations = rep.iterations;
    row.converged = rep.converged;
    row.wall_seconds = rep.wall_seconds;
    row.setup_seconds = bp.setup_seconds;
    row.final_relres = rep.true_relative_residual;
    row.operator_applications =
        cfg.solver == Solver::lsqr ? 2 * Index{rep.iterations} : Index{rep.iterations};
    return row;
}

int worker_cap() {
    if (const char* env = std::getenv("SYMTOEP_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace

std::vector<ResultRow> run(const RunConfig& cfg) {
    if (cfg.sizes.empty()) throw ConfigError("run: no sizes given");
    // fail fast on incompatible combinations, before any compute
    if (cfg.solver == Solver::minres) {
        switch (cfg.precond) {
            case Precond::circ_strang:
            case Precond::circ_optimal:
            case Precond::circ_superoptimal:
            case Precond::block_circ:
            case Precond::mg_a:
                throw ConfigError("minres requires an SPD preconditioner (got " +
                                  to_string(cfg.precond) + ")");
            default:
                break;
        }
    }
    if (cfg.example != 3 &&
        (cfg.precond == Precond::block_circ || cfg.precond == Precond::block_circ_abs))
        throw ConfigError("block circulants apply to the 2D example only");

    std::vector<ResultRow> rows(cfg.sizes.size());
    int workers = std::min<int>(worker_cap(), static_cast<int>(cfg.sizes.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.sizes.size(); ++i) rows[i] = run_one(cfg, cfg.sizes[i]);
        return rows;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(cfg.sizes.size());
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < cfg.sizes.size();
                 i = next.fetch_add(1)) {
                try {
                    rows[i] = run_one(cfg, cfg.sizes[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

void export_spectrum(const RunConfig& cfg, SpectrumTarget target,
                     const std::filesystem::path& path) {
    if (cfg.sizes.empty()) throw ConfigError("export_spectrum: no size given");
    Index n = cfg.sizes.front();
    ProblemInstance inst = build_instance(cfg, n);
    Index N = inst.op.size();
    if (N > 2048) throw SizeCapError("export_spectrum: size exceeds the dense cap");

    BuiltPreconditioner bp = build_preconditioner(cfg.precond, inst, cfg.solver, cfg.mg);
    // materialize P^{-1} by applying the solve to unit vectors
    Mat Pinv(N, N);
    Vec e = Vec::Zero(N);
    for (Index i = 0; i < N; ++i) {
        e[i] = 1.0;
        Pinv.col(i) = bp.handle.solve(e);
        e[i] = 0.0;
    }
    if (target == SpectrumTarget::symmetrized) {
        Mat P = Pinv.inverse();
        P = 0.5 * (P + P.transpose());
        SpectrumReport rep = preconditioned_spectrum_sym(P, inst.op.dense_symmetrized());
        write_spectrum(path, rep.eigenvalues);
    } else {
        Mat M = Pinv * inst.op.dense();
        Eigen::EigenSolver<Mat> es(M, false);
        CVec ev = es.eigenvalues();
        std::sort(ev.data(), ev.data() + ev.size(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        write_spectrum(path, ev);
    }
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw InputError("bad numeric field: " + s);
    return v;
}

const char* kCsvHeader =
    "example,n,alpha,beta,d_plus,d_minus,e_plus,e_minus,solver,precond,tol,maxit,seed,"
    "iterations,converged,wall_seconds,setup_seconds,final_relres,operator_applications";

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.example) + ',' + std::to_string(r.n) + ',';
        out += fmt_double(r.alpha) + ',' + fmt_double(r.beta) + ',';
        out += fmt_double(r.d_plus) + ',' + fmt_double(r.d_minus) + ',';
        out += fmt_double(r.e_plus) + ',' + fmt_double(r.e_minus) + ',';
        out += r.solver + ',' + r.precond + ',';
        out += fmt_double(r.tol) + ',' + std::to_string(r.maxit) + ',' +
               std::to_string(r.seed) + ',';
        out += std::to_string(r.iterations) + ',';
        out += (r.converged ? "true" : "false");
        out += ',';
        out += fmt_double(r.wall_seconds) + ',' + fmt_double(r.setup_seconds) + ',' +
               fmt_double(r.final_relres) + ',' + std::to_string(r.operator_applications);
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw InputError("from_csv: unexpected header");
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) f.push_back(tok);
        if (f.size() != 19) throw InputError("from_csv: bad field count");
        ResultRow r;
        r.example = std::stoi(f[0]);
        r.n = std::stoll(f[1]);
        r.alpha = parse_double(f[2]);
        r.beta = parse_double(f[3]);
        r.d_plus = parse_double(f[4]);
        r.d_minus = parse_double(f[5]);
        r.e_plus = parse_double(f[6]);
        r.e_minus = parse_double(f[7]);
        r.solver = f[8];
        r.precond = f[9];
        r.tol = parse_double(f[10]);
        r.maxit = std::stoi(f[11]);
        r.seed = std::stoull(f[12]);
        r.iterations = std::stoi(f[13]);
        r.converged = f[14] == "true";
        r.wall_seconds = parse_double(f[15]);
        r.setup_seconds = parse_double(f[16]);
        r.final_relres = parse_double(f[17]);
        r.operator_applications = std::stoll(f[18]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

nlohmann::json row_to_json(const ResultRow& r) {
    return nlohmann::json{{"example", r.example},
                          {"n", r.n},
                          {"alpha", r.alpha},
                          {"beta", r.beta},
                          {"d_plus", r.d_plus},
                          {"d_minus", r.d_minus},
                          {"e_plus", r.e_plus},
                          {"e_minus", r.e_minus},
                          {"solver", r.solver},
                          {"precond", r.precond},
                          {"tol", r.tol},
                          {"maxit", r.maxit},
                          {"seed", r.seed},
                          {"iterations", r.iterations},
                          {"converged", r.converged},
                          {"wall_seconds", r.wall_seconds},
                          {"setup_seconds", r.setup_seconds},
                          {"final_relres", r.final_relres},
                          {"operator_applications", r.operator_applications}};
}

}  // namespace

std::string to_json_lines(const std::vector<ResultRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        out += row_to_json(r).dump();
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> from_json_lines(const std::string& text) {
    std::vector<ResultRow> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        ResultRow r;
        r.example = j.at("example");
        r.n = j.at("n");
        r.alpha = j.at("alpha");
        r.beta = j.at("beta");
        r.d_plus = j.at("d_plus");
        r.d_minus = j.at("d_minus");
        r.e_plus = j.at("e_plus");
        r.e_minus = j.at("e_minus");
        r.solver = j.at("solver");
        r.precond = j.at("precond");
        r.tol = j.at("tol");
        r.maxit = j.at("maxit");
        r.seed = j.at("seed");
        r.iterations = j.at("iterations");
        r.converged = j.at("converged");
        r.wall_seconds = j.at("wall_seconds");
        r.setup_seconds = j.at("setup_seconds");
        r.final_relres = j.at("final_relres");
        r.operator_applications = j.at("operator_applications");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string render_table(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os << "example  n        solver  precond               iters    time(s)    setup(s)\n";
    for (const auto& r : rows) {
        char buf[160];
        std::string iters = r.converged ? std::to_string(r.iterations) : "---";
        std::snprintf(buf, sizeof(buf), "ex%-6d %-8lld %-7s %-21s %-8s %-10.4g %-10.4g\n",
                      r.example, static_cast<long long>(r.n), r.solver.c_str(),
                      r.precond.c_str(), iters.c_str(), r.wall_seconds, r.setup_seconds);
        os << buf;
    }
    return os.str();
}

}  // namespace symtoep::bench
