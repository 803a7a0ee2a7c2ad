#include "ddm/kernels.hpp"

#include <cmath>
#include <cstring>

namespace ddm::kernels {

namespace {

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double* y, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void vadd_scalar(double* y, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

void vsub_scalar(double* y, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] -= x[i];
}

void vmul_scalar(double* y, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

void matmul_scalar(double* c, const double* a, const double* b,
                   std::size_t n, std::size_t k, std::size_t m) {
    std::memset(c, 0, n * m * sizeof(double));
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = c + i * m;
        const double* arow = a + i * k;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = arow[kk];
            const double* brow = b + kk * m;
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
}

void adam_scalar(double* p, double* m, double* v, const double* g, std::size_t n,
                 double lr, double beta1, double beta2, double eps,
                 double c1, double c2, double weight_decay) {
    const double om1 = 1.0 - beta1;
    const double om2 = 1.0 - beta2;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + om1 * g[i];
        v[i] = beta2 * v[i] + om2 * (g[i] * g[i]);
        const double mhat = m[i] * c1;
        const double vhat = v[i] * c2;
        p[i] -= lr * (mhat / (std::sqrt(vhat) + eps));
        p[i] -= lr * weight_decay * p[i];
    }
}

void ema_scalar(double* shadow, const double* p, std::size_t n, double decay) {
    const double omd = 1.0 - decay;
    for (std::size_t i = 0; i < n; ++i) shadow[i] = decay * shadow[i] + omd * p[i];
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        axpy_scalar, scale_scalar, vadd_scalar, vsub_scalar, vmul_scalar,
        matmul_scalar, adam_scalar, ema_scalar,
    };
    return ops;
}

}  // namespace ddm::kernels
