#pragma once

#include <cstddef>

namespace ddm::kernels {

// Data-parallel inner loops behind all dense math. Two implementations:
// a scalar reference and an AVX2 variant, selected at runtime. Both paths
// perform the same floating-point operations in the same order (matmul is
// axpy-form with no horizontal reductions, and FMA contraction is disabled
// project-wide), so their results are bit-identical and the choice of path
// never affects reproducibility.
struct Ops {
    const char* name;

    // y[i] += a * x[i]
    void (*axpy)(double* y, double a, const double* x, std::size_t n);
    // y[i] *= a
    void (*scale)(double* y, double a, std::size_t n);
    // y[i] += x[i]
    void (*vadd)(double* y, const double* x, std::size_t n);
    // y[i] -= x[i]
    void (*vsub)(double* y, const double* x, std::size_t n);
    // y[i] *= x[i]
    void (*vmul)(double* y, const double* x, std::size_t n);
    // C(n x m) = A(n x k) * B(k x m), all row-major. C is overwritten.
    // Accumulation order over k is fixed per output element.
    void (*matmul)(double* c, const double* a, const double* b,
                   std::size_t n, std::size_t k, std::size_t m);
    // Bias-corrected Adam with decoupled weight decay. c1 = 1/(1-beta1^T),
    // c2 = 1/(1-beta2^T) are precomputed by the caller.
    void (*adam_update)(double* p, double* m, double* v, const double* g,
                        std::size_t n, double lr, double beta1, double beta2,
                        double eps, double c1, double c2, double weight_decay);
    // shadow[i] = decay * shadow[i] + (1 - decay) * p[i]
    void (*ema_update)(double* shadow, const double* p, std::size_t n, double decay);
};

const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops();  // valid only if avx2_available()

// Active implementation: best available, overridable with DDM_KERNEL=scalar|avx2.
const Ops& active();

}  // namespace ddm::kernels
