#include "ddm/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "ddm/threading.hpp"

namespace ddm::linalg {

void matmul(Matrix& c, const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions disagree");
    if (c.rows != a.rows || c.cols != b.cols) c = Matrix(a.rows, b.cols);
    const auto& ops = kernels::active();
    const std::size_t k = a.cols, m = b.cols;
    // Grain sized so small batches stay single-threaded.
    const std::size_t grain = (a.rows + max_threads() - 1) / max_threads() < 16
                                  ? a.rows
                                  : (a.rows + max_threads() - 1) / max_threads();
    parallel_for(a.rows, grain, [&](std::size_t r0, std::size_t r1) {
        ops.matmul(c.data.data() + r0 * m, a.data.data() + r0 * k, b.data.data(),
                   r1 - r0, k, m);
    });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c;
    matmul(c, a, b);
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

void add_inplace(Matrix& y, const Matrix& x) {
    require_same_shape(y, x, "add");
    kernels::active().vadd(y.data.data(), x.data.data(), y.size());
}

void sub_inplace(Matrix& y, const Matrix& x) {
    require_same_shape(y, x, "sub");
    kernels::active().vsub(y.data.data(), x.data.data(), y.size());
}

void mul_inplace(Matrix& y, const Matrix& x) {
    require_same_shape(y, x, "mul");
    kernels::active().vmul(y.data.data(), x.data.data(), y.size());
}

void scale_inplace(Matrix& y, double a) {
    kernels::active().scale(y.data.data(), a, y.size());
}

void axpy_inplace(Matrix& y, double a, const Matrix& x) {
    require_same_shape(y, x, "axpy");
    kernels::active().axpy(y.data.data(), a, x.data.data(), y.size());
}

double sum(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data) s += v;
    return s;
}

double sum_sq(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data) s += v * v;
    return s;
}

double sum_abs(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data) s += std::fabs(v);
    return s;
}

double max_abs(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data) s = std::max(s, std::fabs(v));
    return s;
}

double mse(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "mse");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

void col_sum(const Matrix& a, Matrix& out) {
    if (out.rows != 1 || out.cols != a.cols) out = Matrix(1, a.cols);
    for (double& v : out.data) v = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        kernels::active().vadd(out.data.data(), a.row(i), a.cols);
    return;
}

}  // namespace ddm::linalg
