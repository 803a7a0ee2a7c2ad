// AVX2 variants of the dense kernels. This translation unit is compiled with
// -mavx2 on x86-64; callers must check avx2_available() before use.
//
// Every loop mirrors the scalar reference element-for-element: plain
// mul/add (no FMA), and sqrt/div are the IEEE-correct vector instructions,
// so outputs are bit-identical to the scalar path.

#include "ddm/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DDM_X86 1
#else
#define DDM_X86 0
#endif

#if DDM_X86

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace ddm::kernels {

namespace {

void axpy_avx2(double* y, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double* y, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), va));
    for (; i < n; ++i) y[i] *= a;
}

void vadd_avx2(double* y, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] += x[i];
}

void vsub_avx2(double* y, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] -= x[i];
}

void vmul_avx2(double* y, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] *= x[i];
}

void matmul_avx2(double* c, const double* a, const double* b,
                 std::size_t n, std::size_t k, std::size_t m) {
    std::memset(c, 0, n * m * sizeof(double));
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = c + i * m;
        const double* arow = a + i * k;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const __m256d av = _mm256_set1_pd(arow[kk]);
            const double* brow = b + kk * m;
            std::size_t j = 0;
            for (; j + 4 <= m; j += 4) {
                __m256d vc = _mm256_loadu_pd(crow + j);
                vc = _mm256_add_pd(vc, _mm256_mul_pd(av, _mm256_loadu_pd(brow + j)));
                _mm256_storeu_pd(crow + j, vc);
            }
            const double avs = arow[kk];
            for (; j < m; ++j) crow[j] += avs * brow[j];
        }
    }
}

void adam_avx2(double* p, double* m, double* v, const double* g, std::size_t n,
               double lr, double beta1, double beta2, double eps,
               double c1, double c2, double weight_decay) {
    const __m256d vb1 = _mm256_set1_pd(beta1);
    const __m256d vb2 = _mm256_set1_pd(beta2);
    const __m256d vom1 = _mm256_set1_pd(1.0 - beta1);
    const __m256d vom2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d vc1 = _mm256_set1_pd(c1);
    const __m256d vc2 = _mm256_set1_pd(c2);
    const __m256d vlr = _mm256_set1_pd(lr);
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d vwd = _mm256_set1_pd(lr * weight_decay);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vg = _mm256_loadu_pd(g + i);
        __m256d vm = _mm256_loadu_pd(m + i);
        __m256d vv = _mm256_loadu_pd(v + i);
        vm = _mm256_add_pd(_mm256_mul_pd(vb1, vm), _mm256_mul_pd(vom1, vg));
        vv = _mm256_add_pd(_mm256_mul_pd(vb2, vv), _mm256_mul_pd(vom2, _mm256_mul_pd(vg, vg)));
        _mm256_storeu_pd(m + i, vm);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_mul_pd(vm, vc1);
        const __m256d vhat = _mm256_mul_pd(vv, vc2);
        __m256d vp = _mm256_loadu_pd(p + i);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), veps);
        vp = _mm256_sub_pd(vp, _mm256_mul_pd(vlr, _mm256_div_pd(mhat, denom)));
        vp = _mm256_sub_pd(vp, _mm256_mul_pd(vwd, vp));
        _mm256_storeu_pd(p + i, vp);
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
        const double mhat = m[i] * c1;
        const double vhat = v[i] * c2;
        p[i] -= lr * (mhat / (std::sqrt(vhat) + eps));
        p[i] -= lr * weight_decay * p[i];
    }
}

void ema_avx2(double* shadow, const double* p, std::size_t n, double decay) {
    const __m256d vd = _mm256_set1_pd(decay);
    const __m256d vo = _mm256_set1_pd(1.0 - decay);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vs = _mm256_loadu_pd(shadow + i);
        const __m256d vp = _mm256_loadu_pd(p + i);
        _mm256_storeu_pd(shadow + i, _mm256_add_pd(_mm256_mul_pd(vd, vs), _mm256_mul_pd(vo, vp)));
    }
    for (; i < n; ++i) shadow[i] = decay * shadow[i] + (1.0 - decay) * p[i];
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",
        axpy_avx2, scale_avx2, vadd_avx2, vsub_avx2, vmul_avx2,
        matmul_avx2, adam_avx2, ema_avx2,
    };
    return ops;
}

}  // namespace ddm::kernels

#else  // !DDM_X86

namespace ddm::kernels {

const Ops& avx2_ops() { return scalar_ops(); }

}  // namespace ddm::kernels

#endif
