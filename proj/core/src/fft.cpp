// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#include "symtoep/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

#include "symtoep/errors.hpp"

namespace symtoep::fft {

namespace {

enum class Kind : int { c2c_fwd, c2c_bwd, real_fwd, real_bwd };

struct PlanKey {
    Dims dims;
    Kind kind;
    auto operator<=>(const PlanKey&) const = default;
};

// FFTW's planner is not thread-safe; execution through the new-array API is,
// as long as every call uses its own fftw_malloc'd buffers.
std::mutex planner_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
    static std::map<PlanKey, fftw_plan> cache;
    return cache;
}

template <typename T>
struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : ptr(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {}
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    T* ptr;
};

fftw_plan get_plan(const Dims& dims, Kind kind) {
    if (dims.empty() || dims.size() > 2) throw InputError("fft: rank must be 1 or 2");
    std::lock_guard lock(planner_mutex);
    auto& cache = plan_cache();
    PlanKey key{dims, kind};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    std::vector<int> n(dims.begin(), dims.end());
    Index total = product(dims);
    Index htotal = total / dims.back() * half_extent(dims.back());

    fftw_plan plan = nullptr;
    switch (kind) {
        case Kind::c2c_fwd:
        case Kind::c2c_bwd: {
            FftwBuffer<fftw_complex> in(total), out(total);
            int sign = kind == Kind::c2c_fwd ? FFTW_FORWARD : FFTW_BACKWARD;
            plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), in.ptr, out.ptr, sign,
                                 FFTW_ESTIMATE);
            break;
        }
        case Kind::real_fwd: {
            FftwBuffer<double> in(total);
            FftwBuffer<fftw_complex> out(htotal);
            plan = fftw_plan_dft_r2c(static_cast<int>(n.size()), n.data(), in.ptr, out.ptr,
                                     FFTW_ESTIMATE);
            break;
        }
        case Kind::real_bwd: {
            FftwBuffer<fftw_complex> in(htotal);
            FftwBuffer<double> out(total);
            plan = fftw_plan_dft_c2r(static_cast<int>(n.size()), n.data(), in.ptr, out.ptr,
                                     FFTW_ESTIMATE);
            break;
        }
    }
    if (!plan) throw Error("fftw plan creation failed");
    cache.emplace(std::move(key), plan);
    return plan;
}

}  // namespace

void c2c(const Dims& dims, const Complex* in, Complex* out, int sign) {
    fftw_plan plan = get_plan(dims, sign < 0 ? Kind::c2c_fwd : Kind::c2c_bwd);
    Index total = product(dims);
    FftwBuffer<fftw_complex> bin(total), bout(total);
    std::memcpy(static_cast<void*>(bin.ptr), in, sizeof(Complex) * total);
    fftw_execute_dft(plan, bin.ptr, bout.ptr);
    std::memcpy(static_cast<void*>(out), bout.ptr, sizeof(Complex) * total);
}

CVec forward(const Dims& dims, const CVec& in) {
    CVec out(in.size());
    c2c(dims, in.data(), out.data(), -1);
    return out;
}

CVec backward(const Dims& dims, const CVec& in) {
    CVec out(in.size());
    c2c(dims, in.data(), out.data(), +1);
    return out;
}

void r2c(const Dims& dims, const double* in, Complex* out) {
    fftw_plan plan = get_plan(dims, Kind::real_fwd);
    Index total = product(dims);
    Index htotal = total / dims.back() * half_extent(dims.back());
    FftwBuffer<double> bin(total);
    FftwBuffer<fftw_complex> bout(htotal);
    std::memcpy(bin.ptr, in, sizeof(double) * total);
    fftw_execute_dft_r2c(plan, bin.ptr, bout.ptr);
    std::memcpy(static_cast<void*>(out), bout.ptr, sizeof(Complex) * htotal);
}

void c2r(const Dims& dims, const Complex* in, double* out) {
    fftw_plan plan = get_plan(dims, Kind::real_bwd);
    Index total = product(dims);
    Index htotal = total / dims.back() * half_extent(dims.back());
    FftwBuffer<fftw_complex> bin(htotal);
    FftwBuffer<double> bout(total);
    std::memcpy(static_cast<void*>(bin.ptr), in, sizeof(Complex) * htotal);
    fftw_execute_dft_c2r(plan, bin.ptr, bout.ptr);
    std::memcpy(out, bout.ptr, sizeof(double) * total);
}

}  // namespace symtoep::fft
