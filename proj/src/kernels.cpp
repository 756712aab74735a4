#include "ampkit/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ampkit::kernels {

namespace {

float dot_scalar(const float* a, const float* b, std::size_t n) {
    float acc = 0.0f;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(float alpha, const float* x, float* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_scalar(const float* w, std::size_t rows, std::size_t cols, const float* x, float* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] += dot_scalar(w + r * cols, x, cols);
}

void gemv_t_scalar(const float* w, std::size_t rows, std::size_t cols, const float* x, float* y) {
    for (std::size_t r = 0; r < rows; ++r) axpy_scalar(x[r], w + r * cols, y, cols);
}

void ger_scalar(float* w, std::size_t rows, std::size_t cols, const float* x, const float* y) {
    for (std::size_t r = 0; r < rows; ++r) axpy_scalar(x[r], y, w + r * cols, cols);
}

void tanh_vec_scalar(const float* x, float* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

void sigmoid_vec_scalar(const float* x, float* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 1.0f / (1.0f + std::exp(-x[i]));
}

double sumsq_scalar(const float* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * static_cast<double>(x[i]);
    return acc;
}

const Ops g_scalar_ops = {
    dot_scalar, axpy_scalar, gemv_scalar,    gemv_t_scalar,
    ger_scalar, tanh_vec_scalar, sigmoid_vec_scalar, sumsq_scalar,
};

Isa pick_startup_isa() {
    if (const char* env = std::getenv("AMPKIT_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && cpu_supports_avx2()) return Isa::avx2;
        if (v != "auto" && v != "avx2") return Isa::scalar; // unknown value: safe fallback
    }
    return cpu_supports_avx2() ? Isa::avx2 : Isa::scalar;
}

struct Dispatch {
    const Ops* table;
    Isa isa;
    Dispatch() {
        isa = pick_startup_isa();
        table = (isa == Isa::avx2) ? detail::avx2_ops() : &g_scalar_ops;
        if (table == nullptr) { // AVX2 build unavailable on this target
            isa = Isa::scalar;
            table = &g_scalar_ops;
        }
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

} // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() { return dispatch().isa; }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void select_isa(Isa isa) {
    if (isa == Isa::avx2) {
        const Ops* t = cpu_supports_avx2() ? detail::avx2_ops() : nullptr;
        if (t == nullptr) throw std::runtime_error("AVX2 kernels are not available on this CPU");
        dispatch().table = t;
    } else {
        dispatch().table = &g_scalar_ops;
    }
    dispatch().isa = isa;
}

const Ops& ops() { return *dispatch().table; }

const Ops& detail::scalar_ops() { return g_scalar_ops; }

#ifndef AMPKIT_WITH_AVX2
const Ops* detail::avx2_ops() { return nullptr; }
#endif

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] += dot(w + r * cols, x, cols);
}

void gemv_t(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) axpy(x[r], w + r * cols, y, cols);
}

void ger(double* w, std::size_t rows, std::size_t cols, const double* x, const double* y) {
    for (std::size_t r = 0; r < rows; ++r) axpy(x[r], y, w + r * cols, cols);
}

void tanh_vec(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

void sigmoid_vec(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 / (1.0 + std::exp(-x[i]));
}

double sumsq(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

} // namespace ampkit::kernels
