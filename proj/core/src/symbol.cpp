// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/symbol.hpp"

#include <cmath>
#include <numbers>

#include "symtoep/errors.hpp"
#include "symtoep/fft.hpp"

namespace symtoep {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDomainSlack = 1e-12;
}  // namespace

Symbol::Symbol(int dim, EvalFn eval, CoeffFn analytic_coeff)
    : dim_(dim), eval_(std::move(eval)), analytic_(std::move(analytic_coeff)) {
    if (dim_ < 1 || dim_ > 2) throw InputError("Symbol: dim must be 1 or 2");
    if (!eval_) throw InputError("Symbol: eval function required");
}

Symbol Symbol::from_function(std::function<Complex(double)> f, CoeffFn analytic_coeff) {
    return Symbol(
        1, [f = std::move(f)](std::span<const double> t) { return f(t[0]); },
        std::move(analytic_coeff));
}

Symbol Symbol::from_function2(std::function<Complex(double, double)> f, CoeffFn analytic_coeff) {
    return Symbol(
        2, [f = std::move(f)](std::span<const double> t) { return f(t[0], t[1]); },
        std::move(analytic_coeff));
}

Complex Symbol::operator()(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != dim_)
        throw InputError("Symbol: theta has wrong dimension");
    for (double t : theta)
        if (!(std::abs(t) <= kPi + kDomainSlack))
            throw InputError("Symbol: theta outside [-pi,pi]");
    return eval_(theta);
}

Complex Symbol::operator()(double theta) const {
    return (*this)(std::span<const double>(&theta, 1));
}

Complex Symbol::operator()(double theta1, double theta2) const {
    double t[2] = {theta1, theta2};
    return (*this)(std::span<const double>(t, 2));
}

Complex Symbol::analytic_coeff(std::span<const Index> j) const {
    if (!analytic_) throw InputError("Symbol: no analytic coefficient rule");
    return analytic_(j);
}

SymbolViews derive_views(const Symbol& f, double delta) {
    int p = f.dim();
    auto eval_parent = [f](std::span<const double> t) { return f(t); };

    Symbol real_part(p, [eval_parent](std::span<const double> t) {
        return Complex(eval_parent(t).real(), 0.0);
    });
    Symbol imag_part(p, [eval_parent](std::span<const double> t) {
        return Complex(eval_parent(t).imag(), 0.0);
    });
    Symbol modulus(p, [eval_parent](std::span<const double> t) {
        return Complex(std::abs(eval_parent(t)), 0.0);
    });
    Symbol normalized(p, [eval_parent, delta](std::span<const double> t) {
        Complex v = eval_parent(t);
        double m = std::abs(v);
        if (m < delta) throw SingularSymbolError("f/|f|: |f| below positivity floor");
        return v / m;
    });

    // eager check of the normalized view on a midpoint grid
    Index g = p == 1 ? 4096 : 256;
    if (p == 1) {
        for (Index i = 0; i < g; ++i) {
            double t = -kPi + 2 * kPi * (i + 0.5) / static_cast<double>(g);
            if (std::abs(f(t)) < delta)
                throw SingularSymbolError("f/|f|: |f| below positivity floor on grid");
        }
    } else {
        for (Index i = 0; i < g; ++i)
            for (Index j = 0; j < g; ++j) {
                double t1 = -kPi + 2 * kPi * (i + 0.5) / static_cast<double>(g);
                double t2 = -kPi + 2 * kPi * (j + 0.5) / static_cast<double>(g);
                if (std::abs(f(t1, t2)) < delta)
                    throw SingularSymbolError("f/|f|: |f| below positivity floor on grid");
            }
    }
    return SymbolViews{std::move(real_part), std::move(imag_part), std::move(modulus),
                       std::move(normalized)};
}

FourierCoeffs::FourierCoeffs(Dims dims, CVec values) : dims_(std::move(dims)) {
    if (dims_.empty() || dims_.size() > 2) throw InputError("FourierCoeffs: rank must be 1 or 2");
    Index total = 1;
    for (Index n : dims_) {
        if (n < 1) throw InputError("FourierCoeffs: dims must be positive");
        total *= 2 * n - 1;
    }
    if (values.size() != total) throw InputError("FourierCoeffs: extents must be 2n_i-1");
    values_ = std::move(values);
}

Index FourierCoeffs::offset(std::span<const Index> j) const {
    if (j.size() != dims_.size()) throw InputError("FourierCoeffs: index rank mismatch");
    Index off = 0;
    for (std::size_t a = 0; a < dims_.size(); ++a) {
        Index n = dims_[a];
        if (j[a] <= -n || j[a] >= n) throw InputError("FourierCoeffs: index out of range");
        off = off * (2 * n - 1) + (j[a] + n - 1);
    }
    return off;
}

Complex FourierCoeffs::at(std::span<const Index> j) const { return values_[offset(j)]; }

Complex FourierCoeffs::at(Index j) const { return at(std::span<const Index>(&j, 1)); }

Complex FourierCoeffs::at(Index j1, Index j2) const {
    Index j[2] = {j1, j2};
    return at(std::span<const Index>(j, 2));
}

Complex& FourierCoeffs::at_mut(std::span<const Index> j) { return values_[offset(j)]; }

double FourierCoeffs::max_imag() const {
    double m = 0;
    for (Index i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i].imag()));
    return m;
}

double FourierCoeffs::hermitian_residual() const {
    double m = 0;
    Index total = values_.size();
    for (Index i = 0; i < total; ++i)
        m = std::max(m, std::abs(values_[i] - std::conj(values_[total - 1 - i])));
    return m;
}

FourierCoeffs FourierCoeffs::reversed() const {
    CVec rev = values_.reverse();
    return FourierCoeffs(dims_, std::move(rev));
}

namespace {

Index even_up(Index m) { return m % 2 == 0 ? m : m + 1; }

CVec sample_midpoint_grid(const Symbol& f, const Dims& m) {
    CVec samples(product(m));
    if (f.dim() == 1) {
        for (Index i = 0; i < m[0]; ++i) {
            double t = -kPi + 2 * kPi * (i + 0.5) / static_cast<double>(m[0]);
            samples[i] = f(t);
        }
    } else {
        for (Index i = 0; i < m[0]; ++i) {
            double t1 = -kPi + 2 * kPi * (i + 0.5) / static_cast<double>(m[0]);
            for (Index j = 0; j < m[1]; ++j) {
                double t2 = -kPi + 2 * kPi * (j + 0.5) / static_cast<double>(m[1]);
                samples[i * m[1] + j] = f(t1, t2);
            }
        }
    }
    return samples;
}

// e^{i k pi (1 - 1/M)}: the phase matching the midpoint grid offset
Complex midpoint_phase(Index k, Index m) {
    double a = static_cast<double>(k) * kPi * (1.0 - 1.0 / static_cast<double>(m));
    return Complex(std::cos(a), std::sin(a));
}

}  // namespace

FourierCoeffs fourier_coeffs(const Symbol& f, const Dims& dims, int oversample) {
    if (static_cast<int>(dims.size()) != f.dim())
        throw InputError("fourier_coeffs: dims rank must match symbol dim");
    if (oversample < 4) throw InputError("fourier_coeffs: oversample must be >= 4");

    Index total = 1;
    for (Index n : dims) total *= 2 * n - 1;

    if (f.has_analytic_coeffs()) {
        CVec vals(total);
        if (dims.size() == 1) {
            Index n = dims[0];
            for (Index k = -n + 1; k < n; ++k)
                vals[k + n - 1] = f.analytic_coeff(std::span<const Index>(&k, 1));
        } else {
            Index n1 = dims[0], n2 = dims[1];
            for (Index k1 = -n1 + 1; k1 < n1; ++k1)
                for (Index k2 = -n2 + 1; k2 < n2; ++k2) {
                    Index j[2] = {k1, k2};
                    vals[(k1 + n1 - 1) * (2 * n2 - 1) + (k2 + n2 - 1)] =
                        f.analytic_coeff(std::span<const Index>(j, 2));
                }
        }
        return FourierCoeffs(dims, std::move(vals));
    }

    Dims m(dims.size());
    for (std::size_t a = 0; a < dims.size(); ++a)
        m[a] = even_up(static_cast<Index>(oversample) * (2 * dims[a] - 1));

    CVec samples = sample_midpoint_grid(f, m);
    CVec spectrum = fft::forward(m, samples);

    double scale = 1.0 / static_cast<double>(product(m));
    CVec vals(total);
    if (dims.size() == 1) {
        Index n = dims[0];
        for (Index k = -n + 1; k < n; ++k) {
            Index idx = ((k % m[0]) + m[0]) % m[0];
            vals[k + n - 1] = midpoint_phase(k, m[0]) * spectrum[idx] * scale;
        }
    } else {
        Index n1 = dims[0], n2 = dims[1];
        for (Index k1 = -n1 + 1; k1 < n1; ++k1) {
            Index i1 = ((k1 % m[0]) + m[0]) % m[0];
            for (Index k2 = -n2 + 1; k2 < n2; ++k2) {
                Index i2 = ((k2 % m[1]) + m[1]) % m[1];
                vals[(k1 + n1 - 1) * (2 * n2 - 1) + (k2 + n2 - 1)] =
                    midpoint_phase(k1, m[0]) * midpoint_phase(k2, m[1]) *
                    spectrum[i1 * m[1] + i2] * scale;
            }
        }
    }
    return FourierCoeffs(dims, std::move(vals));
}

namespace {

constexpr double kPositivityFloor = 1e-13;
constexpr double kLimitProbe = 1e-6;

// ratio |f_I/f_R| at theta, or nullopt where f_R is degenerate
std::optional<double> ratio_at(const Symbol& fi, const Symbol& fr, std::span<const double> t) {
    double r = fr(t).real();
    if (r < -kPositivityFloor)
        throw AssumptionError("epsilon_bound: f_R negative at a grid point");
    if (r <= kPositivityFloor) return std::nullopt;
    return std::abs(fi(t).real()) / r;
}

}  // namespace

double epsilon_bound(const Symbol& f_imag, const Symbol& f_real, Index grid_size) {
    if (f_imag.dim() != f_real.dim()) throw InputError("epsilon_bound: dim mismatch");
    if (grid_size < 2) throw InputError("epsilon_bound: grid_size too small");
    int p = f_real.dim();
    double best = 0.0;
    double g = static_cast<double>(grid_size);

    auto probe_limit = [&](std::span<const double> t) {
        // one-sided samples around an excluded point; the essential supremum
        // ignores the point itself but the limit ratio may dominate
        std::vector<double> s(t.begin(), t.end());
        for (std::size_t a = 0; a < s.size(); ++a) {
            for (double d : {-kLimitProbe, kLimitProbe}) {
                s[a] = t[a] + d;
                if (std::abs(s[a]) > kPi) continue;
                if (auto v = ratio_at(f_imag, f_real, s)) best = std::max(best, *v);
            }
            s[a] = t[a];
        }
    };

    if (p == 1) {
        for (Index i = 0; i < grid_size; ++i) {
            double t = -kPi + 2 * kPi * static_cast<double>(i) / g;
            if (auto v = ratio_at(f_imag, f_real, std::span<const double>(&t, 1)))
                best = std::max(best, *v);
            else
                probe_limit(std::span<const double>(&t, 1));
        }
    } else {
        for (Index i = 0; i < grid_size; ++i) {
            double t1 = -kPi + 2 * kPi * static_cast<double>(i) / g;
            for (Index j = 0; j < grid_size; ++j) {
                double t[2] = {t1, -kPi + 2 * kPi * static_cast<double>(j) / g};
                if (auto v = ratio_at(f_imag, f_real, std::span<const double>(t, 2)))
                    best = std::max(best, *v);
                else
                    probe_limit(std::span<const double>(t, 2));
            }
        }
    }
    return best;
}

}  // namespace symtoep
