#include "toda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace toda {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i)
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const double l = lhs(i, k);
            if (l == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += l * rhs(k, j);
        }
    return out;
}

Matrix operator+(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix sum: shape mismatch");
    Matrix out = lhs;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix operator-(const Matrix& lhs, const Matrix& rhs) { return lhs + (-1.0) * rhs; }

Matrix operator*(double s, const Matrix& m) {
    Matrix out = m;
    for (double& v : out.data_) v *= s;
    return out;
}

double max_abs_diff(const Matrix& lhs, const Matrix& rhs) { return (lhs - rhs).max_abs(); }

namespace {

// In-place partial-pivot elimination; returns sign of the permutation times the
// sign of the pivot product, and accumulates log|pivot|. sign 0 if singular.
SignedLog eliminate(Matrix& m) {
    const std::size_t n = m.rows();
    SignedLog out{1, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
        if (m(p, k) == 0.0) return {0, -std::numeric_limits<double>::infinity()};
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            out.sign = -out.sign;
        }
        const double pivot = m(k, k);
        if (pivot < 0) out.sign = -out.sign;
        out.log_abs += std::log(std::abs(pivot));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = m(i, k) / pivot;
            if (factor == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
        }
    }
    return out;
}

}  // namespace

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

double determinant(Matrix m) {
    if (!m.square()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
        if (m(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            det = -det;
        }
        const double pivot = m(k, k);
        det *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = m(i, k) / pivot;
            if (factor == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
        }
    }
    return det;
}

SignedLog log_determinant(Matrix m) {
    if (!m.square()) throw std::invalid_argument("log_determinant: matrix not square");
    const std::size_t n = m.rows();
    double log_scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col_max = 0.0;
        for (std::size_t i = 0; i < n; ++i) col_max = std::max(col_max, std::abs(m(i, j)));
        if (col_max == 0.0) return {0, -std::numeric_limits<double>::infinity()};
        if (!std::isfinite(col_max)) throw std::domain_error("log_determinant: non-finite entry");
        int e = 0;
        std::frexp(col_max, &e);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = std::ldexp(m(i, j), -e);
        log_scale += e * std::log(2.0);
    }
    SignedLog out = eliminate(m);
    if (out.sign != 0) out.log_abs += log_scale;
    return out;
}

}  // namespace toda
