#pragma once

#include <cstddef>
#include <string>

namespace ampkit::kernels {

// Float kernels exist in a scalar reference version and, on x86-64 with AVX2
// and FMA, a vectorized version. One implementation table is selected at
// startup (cpuid, overridable via select_isa() or AMPKIT_SIMD=scalar|avx2)
// and every caller goes through it, so trainer and engine always execute the
// same code path. The double-precision overloads below are always scalar;
// they back the gradient checker.
enum class Isa { scalar, avx2 };

struct Ops {
    float (*dot)(const float* a, const float* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(float alpha, const float* x, float* y, std::size_t n);
    // y += W x, W row-major [rows x cols], x[cols], y[rows]
    void (*gemv)(const float* w, std::size_t rows, std::size_t cols, const float* x, float* y);
    // y += W^T x, W row-major [rows x cols], x[rows], y[cols]
    void (*gemv_t)(const float* w, std::size_t rows, std::size_t cols, const float* x, float* y);
    // W += x y^T, W row-major [rows x cols], x[rows], y[cols]
    void (*ger)(float* w, std::size_t rows, std::size_t cols, const float* x, const float* y);
    void (*tanh_vec)(const float* x, float* y, std::size_t n);
    void (*sigmoid_vec)(const float* x, float* y, std::size_t n);
    // Sum of squares, accumulated in double.
    double (*sumsq)(const float* x, std::size_t n);
};

bool cpu_supports_avx2();
Isa active_isa();
const char* isa_name(Isa isa);
// Throws std::runtime_error if the requested ISA is unsupported on this CPU.
// Not safe to call concurrently with running kernels.
void select_isa(Isa isa);
const Ops& ops();

inline float dot(const float* a, const float* b, std::size_t n) { return ops().dot(a, b, n); }
inline void axpy(float alpha, const float* x, float* y, std::size_t n) { ops().axpy(alpha, x, y, n); }
inline void gemv(const float* w, std::size_t rows, std::size_t cols, const float* x, float* y) {
    ops().gemv(w, rows, cols, x, y);
}
inline void gemv_t(const float* w, std::size_t rows, std::size_t cols, const float* x, float* y) {
    ops().gemv_t(w, rows, cols, x, y);
}
inline void ger(float* w, std::size_t rows, std::size_t cols, const float* x, const float* y) {
    ops().ger(w, rows, cols, x, y);
}
inline void tanh_vec(const float* x, float* y, std::size_t n) { ops().tanh_vec(x, y, n); }
inline void sigmoid_vec(const float* x, float* y, std::size_t n) { ops().sigmoid_vec(x, y, n); }
inline double sumsq(const float* x, std::size_t n) { return ops().sumsq(x, n); }

// Scalar double-precision path.
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t(const double* w, std::size_t rows, std::size_t cols, const double* x, double* y);
void ger(double* w, std::size_t rows, std::size_t cols, const double* x, const double* y);
void tanh_vec(const double* x, double* y, std::size_t n);
void sigmoid_vec(const double* x, double* y, std::size_t n);
double sumsq(const double* x, std::size_t n);

namespace detail {
// Scalar reference table (exposed for equivalence tests).
const Ops& scalar_ops();
// Defined in kernels_avx2.cpp on x86-64 builds; nullptr members otherwise.
const Ops* avx2_ops();
} // namespace detail

} // namespace ampkit::kernels
