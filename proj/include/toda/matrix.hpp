#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace toda {

// Small dense row-major real matrix. Sizes in this library stay below ~10,
// so everything is plain O(n^3) loops.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    // Submatrix on the given (0-based) row and column index lists.
    Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

    double max_abs() const;

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator+(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator-(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator*(double s, const Matrix& m);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// det(m) by Gaussian elimination with partial pivoting.
double determinant(Matrix m);

// Determinant as sign * exp(log_abs). sign == 0 means exactly singular.
struct SignedLog {
    int sign = 0;
    double log_abs = 0.0;

    double value() const;
};

// Pivoted elimination after rescaling every column by a power of two so its
// largest entry lies in [0.5, 1). Power-of-two scaling is exact, so for
// representable inputs this matches determinant() up to the final rescale,
// but never overflows for entries spanning hundreds of orders of magnitude.
SignedLog log_determinant(Matrix m);

double max_abs_diff(const Matrix& lhs, const Matrix& rhs);

}  // namespace toda
