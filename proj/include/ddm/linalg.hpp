#pragma once

#include "ddm/kernels.hpp"
#include "ddm/matrix.hpp"

namespace ddm::linalg {

// C = A * B, row-major. Rows of C are computed independently and may be
// partitioned across worker threads without changing any result bit.
void matmul(Matrix& c, const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

void add_inplace(Matrix& y, const Matrix& x);
void sub_inplace(Matrix& y, const Matrix& x);
void mul_inplace(Matrix& y, const Matrix& x);
void scale_inplace(Matrix& y, double a);
void axpy_inplace(Matrix& y, double a, const Matrix& x);

// Scalar reductions (single fixed accumulation order).
double sum(const Matrix& a);
double sum_sq(const Matrix& a);
double sum_abs(const Matrix& a);
double max_abs(const Matrix& a);

// Mean squared difference over all elements.
double mse(const Matrix& a, const Matrix& b);

// b_out[j] = sum over rows of a(:, j).
void col_sum(const Matrix& a, Matrix& out_1xm);

}  // namespace ddm::linalg
