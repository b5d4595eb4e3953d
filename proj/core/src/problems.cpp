// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/problems.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "symtoep/errors.hpp"
#include "symtoep/rng.hpp"

namespace symtoep {

namespace {

constexpr double kPi = std::numbers::pi;

Complex f_alpha(double theta, double alpha) {
    Complex z = std::exp(Complex(0, theta));
    return -std::exp(Complex(0, -theta)) * std::pow(Complex(1, 0) - z, alpha);
}

/// Thread-safe growable Grunwald weight table shared by symbol closures.
class GrunwaldTable {
public:
    explicit GrunwaldTable(double alpha) : alpha_(alpha), values_{1.0} {}

    double at(Index k) {
        std::lock_guard lock(mutex_);
        while (static_cast<Index>(values_.size()) <= k) {
            double j = static_cast<double>(values_.size());
            values_.push_back(values_.back() * (1.0 - (alpha_ + 1.0) / j));
        }
        return values_[static_cast<std::size_t>(k)];
    }

private:
    double alpha_;
    std::mutex mutex_;
    std::vector<double> values_;
};

/// Coefficient of L_s at lag l: -g_{s,l+1} for l >= -1, else 0.
double grunwald_lag(GrunwaldTable& g, Index l) { return l >= -1 ? -g.at(l + 1) : 0.0; }

}  // namespace

GrunwaldCoeffs grunwald(double alpha, Index count) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InputError("grunwald: alpha must be in (0,2]");
    if (count < 1) throw InputError("grunwald: count >= 1 required");
    Vec v(count + 1);
    v[0] = 1.0;
    for (Index k = 1; k <= count; ++k)
        v[k] = v[k - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(k));
    return GrunwaldCoeffs{alpha, std::move(v)};
}

Symbol example1_symbol() {
    auto eval = [](double t) {
        return (2.0 - 2.0 * std::cos(t)) * Complex(1.0, t);
    };
    // a_k of the imaginary part t(2-2cos t) integrates in closed form:
    // a_k(f) = a_k(2-2cos) + 2 d_k - d_{k-1} - d_{k+1}, d_j = -(-1)^j / j
    auto d = [](Index j) -> double {
        if (j == 0) return 0.0;
        double s = (j % 2 == 0) ? 1.0 : -1.0;
        return -s / static_cast<double>(j);
    };
    auto coeff = [d](std::span<const Index> j) -> Complex {
        Index k = j[0];
        double real_part = k == 0 ? 2.0 : (std::abs(k) == 1 ? -1.0 : 0.0);
        return Complex(real_part + 2 * d(k) - d(k - 1) - d(k + 1), 0.0);
    };
    return Symbol::from_function(eval, coeff);
}

ProblemInstance example1(Index n, std::uint64_t seed) {
    if (n < 8) throw InputError("example1: n >= 8 required");
    Symbol sym = example1_symbol();
    ToeplitzOperator op(fourier_coeffs(sym, {n}));
    Vec rhs = gaussian_vector(seed, n);
    ProblemMeta meta;
    meta.example = 1;
    meta.dims = {n};
    meta.seed = seed;
    return ProblemInstance{std::move(op), std::move(rhs), std::move(sym), meta};
}

Symbol example2_symbol(double alpha, double d_plus, double d_minus, double nu) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw InputError("example2_symbol: alpha in (0,2]");
    auto eval = [=](double t) {
        return nu + d_plus * f_alpha(t, alpha) + d_minus * f_alpha(-t, alpha);
    };
    auto table = std::make_shared<GrunwaldTable>(alpha);
    auto coeff = [=](std::span<const Index> j) -> Complex {
        Index m = j[0];
        double v = m == 0 ? nu : 0.0;
        v += d_plus * grunwald_lag(*table, m);
        v += d_minus * grunwald_lag(*table, -m);
        return Complex(v, 0.0);
    };
    return Symbol::from_function(eval, coeff);
}

ProblemInstance example2(Index n, double alpha, double d_plus, double d_minus) {
    if (n < 8) throw InputError("example2: n >= 8 required");
    if (!(alpha > 1.0 && alpha < 2.0)) throw InputError("example2: alpha in (1,2) required");
    if (d_plus < 0 || d_minus < 0 || (d_plus == 0 && d_minus == 0))
        throw InputError("example2: d+ and d- must be nonnegative, not both zero");

    double tau = 1.0 / std::ceil(std::pow(static_cast<double>(n), alpha));
    double h = 1.0 / static_cast<double>(n + 1);
    double nu = tau / std::pow(h, alpha);

    Symbol sym = example2_symbol(alpha, d_plus, d_minus, nu);
    ToeplitzOperator op(fourier_coeffs(sym, {n}));

    Vec rhs(n);
    for (Index i = 1; i <= n; ++i) {
        double x = static_cast<double>(i) * h;
        rhs[i - 1] = nu * 80.0 * std::sin(20.0 * x) * std::cos(10.0 * x);
    }
    ProblemMeta meta;
    meta.example = 2;
    meta.dims = {n};
    meta.alpha = alpha;
    meta.d_plus = d_plus;
    meta.d_minus = d_minus;
    meta.nu = nu;
    meta.tau = tau;
    meta.h = h;
    return ProblemInstance{std::move(op), std::move(rhs), std::move(sym), meta};
}

FourierCoeffs example3_level_coeffs(Index n, double s, double w_plus, double w_minus,
                                    double tau) {
    double h = 1.0 / static_cast<double>(n + 1);
    double scale = tau / std::pow(h, s);
    GrunwaldCoeffs g = grunwald(s, n + 1);
    CVec vals = CVec::Zero(2 * n - 1);
    // signed as the factor enters A = I - I(x)L_x - L_y(x)I, so that
    // 1 - lambda_x - lambda_y reproduces the operator's symbol
    for (Index l = -n + 1; l < n; ++l) {
        double v = 0.0;
        if (l >= -1) v += w_plus * (-g.values[l + 1]);
        if (-l >= -1) v += w_minus * (-g.values[1 - l]);
        vals[l + n - 1] = Complex(-scale * v, 0.0);
    }
    return FourierCoeffs({n}, std::move(vals));
}

Symbol example3_symbol(Index n, double alpha, double beta, double d_plus, double d_minus,
                       double e_plus, double e_minus) {
    double tau = 1.0 / std::ceil(std::pow(static_cast<double>(n), alpha));
    double h = 1.0 / static_cast<double>(n + 1);
    double cx = tau / std::pow(h, alpha);
    double cy = tau / std::pow(h, beta);
    // dissipative sign: each level factor adds a positive-real part, as in the
    // 1D system; with the opposite sign the symmetric part is indefinite and no
    // SPD symmetric-part preconditioner exists
    auto eval = [=](double ty, double tx) {
        return 1.0 + cx * (d_plus * f_alpha(tx, alpha) + d_minus * f_alpha(-tx, alpha)) +
               cy * (e_plus * f_alpha(ty, beta) + e_minus * f_alpha(-ty, beta));
    };
    auto tx_table = std::make_shared<GrunwaldTable>(alpha);
    auto ty_table = std::make_shared<GrunwaldTable>(beta);
    auto coeff = [=](std::span<const Index> j) -> Complex {
        Index jy = j[0], jx = j[1];
        double v = (jy == 0 && jx == 0) ? 1.0 : 0.0;
        if (jy == 0)
            v += cx * (d_plus * grunwald_lag(*tx_table, jx) +
                       d_minus * grunwald_lag(*tx_table, -jx));
        if (jx == 0)
            v += cy * (e_plus * grunwald_lag(*ty_table, jy) +
                       e_minus * grunwald_lag(*ty_table, -jy));
        return Complex(v, 0.0);
    };
    return Symbol::from_function2(eval, coeff);
}

ProblemInstance example3(Index n, double alpha, double beta, double d_plus, double d_minus,
                         double e_plus, double e_minus) {
    if (n < 7) throw InputError("example3: n >= 7 per axis required");
    if (!(alpha > 1.0 && alpha < 2.0) || !(beta > 1.0 && beta < 2.0))
        throw InputError("example3: alpha, beta in (1,2) required");

    double tau = 1.0 / std::ceil(std::pow(static_cast<double>(n), alpha));
    double h = 1.0 / static_cast<double>(n + 1);

    Symbol sym = example3_symbol(n, alpha, beta, d_plus, d_minus, e_plus, e_minus);
    ToeplitzOperator op(fourier_coeffs(sym, {n, n}));

    Vec rhs(n * n);
    for (Index j = 1; j <= n; ++j) {      // y, slow
        double y = static_cast<double>(j) * h;
        for (Index i = 1; i <= n; ++i) {  // x, fast
            double x = static_cast<double>(i) * h;
            rhs[(j - 1) * n + (i - 1)] = 100.0 * std::sin(10.0 * x) * std::cos(y);
        }
    }
    ProblemMeta meta;
    meta.example = 3;
    meta.dims = {n, n};
    meta.alpha = alpha;
    meta.beta = beta;
    meta.d_plus = d_plus;
    meta.d_minus = d_minus;
    meta.e_plus = e_plus;
    meta.e_minus = e_minus;
    meta.tau = tau;
    meta.h = h;
    return ProblemInstance{std::move(op), std::move(rhs), std::move(sym), meta};
}

BandedApproximation banded_am(const Symbol& modulus, Index n, double alpha) {
    if (modulus.dim() != 1) throw InputError("banded_am: 1-d symbol required");
    Index band;
    if (alpha == 1.25) {
        band = 50;
    } else {
        double b = (alpha == 1.75) ? 100.0 : 40.0;
        band = static_cast<Index>(
            std::ceil(b * std::pow(1.1, std::log2(static_cast<double>(n + 1)))));
    }
    bool clamped = false;
    if (band > n) {
        band = n;
        clamped = true;
    }
    FourierCoeffs bandc = fourier_coeffs(modulus, {band});
    CVec vals = CVec::Zero(2 * n - 1);
    for (Index k = -band + 1; k < band; ++k) vals[k + n - 1] = bandc.at(k);
    return BandedApproximation{ToeplitzOperator(FourierCoeffs({n}, std::move(vals))), band,
                               clamped};
}

}  // namespace symtoep
