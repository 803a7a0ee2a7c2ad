#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ddm {

// Dense row-major matrix of 64-bit floats. Rows are samples, columns are
// coordinates. Treated as immutable once handed to another module; safe to
// share read-only across threads.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rs) {
        Matrix m(rs.size(), rs.size() ? rs.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& r : rs) {
            if (r.size() != m.cols) throw std::invalid_argument("ragged initializer");
            std::size_t j = 0;
            for (double v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t size() const { return rows * cols; }

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (!a.same_shape(b)) throw std::invalid_argument(std::string("shape mismatch in ") + what);
}

}  // namespace ddm
