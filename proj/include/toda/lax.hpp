#pragma once

// Tridiagonal Lax matrices of the finite Toda lattice,
//
//     | a_1  1              |
//     | b_1  a_2  1         |
//     |      ...  ...  1    |
//     |           b_{n-1} a_n |
//
// together with their characteristic polynomial, spectrum, minors and the
// cofactor vectors of L - lambda E that feed the linearization map.
//
// Index conventions: index lists passed to minor() are 0-based; the component
// index of divisor_of_component() is 1-based (1..n), matching the tau index.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "toda/matrix.hpp"
#include "toda/polynomial.hpp"

namespace toda {

inline constexpr double kDefaultSeparation = 1e-10;

class LaxMatrix {
public:
    // Throws InvalidLaxMatrix unless n >= 2, |b| == n - 1, every b_i != 0 and
    // all entries are finite.
    LaxMatrix(std::vector<double> a, std::vector<double> b);

    // Reads a tridiagonal dense matrix. Unit superdiagonal is taken as is;
    // any other nonzero superdiagonal c_i is folded into b_i = c_i * d_i by a
    // diagonal similarity, which preserves the spectra of L and of all its
    // contiguous principal blocks.
    static LaxMatrix from_dense(const Matrix& m);

    std::size_t size() const noexcept { return a_.size(); }
    const std::vector<double>& a() const noexcept { return a_; }
    const std::vector<double>& b() const noexcept { return b_; }

    bool positive_offdiagonal() const noexcept;

    Matrix dense() const;

    friend bool operator==(const LaxMatrix&, const LaxMatrix&) = default;

private:
    std::vector<double> a_;
    std::vector<double> b_;
};

// Strictly increasing real eigenvalues with pairwise gaps above `separation`.
class Spectrum {
public:
    // Throws NonSimpleSpectrum on a gap <= separation (or a non-increasing
    // input), std::invalid_argument on an empty or non-finite input.
    explicit Spectrum(std::vector<double> lambdas, double separation = kDefaultSeparation);

    const std::vector<double>& values() const noexcept { return lambdas_; }
    std::size_t size() const noexcept { return lambdas_.size(); }
    double operator[](std::size_t i) const { return lambdas_[i]; }
    double min() const { return lambdas_.front(); }
    double max() const { return lambdas_.back(); }
    bool positive() const noexcept { return lambdas_.front() > 0.0; }
    double separation() const noexcept { return separation_; }

    // prod_{i<j} (lambda_j - lambda_i), strictly positive.
    double vandermonde() const;

private:
    std::vector<double> lambdas_;
    double separation_;
};

enum class Variable { x, y };

// v_- lives on the x-sheet, v_+ on the y-sheet.
struct PolynomialVector {
    Variable variable = Variable::x;
    std::vector<Polynomial> entries;

    std::size_t size() const noexcept { return entries.size(); }
    const Polynomial& operator[](std::size_t i) const { return entries[i]; }
};

struct CofactorVectors {
    PolynomialVector minus;
    PolynomialVector plus;
};

struct SpectrumOptions {
    double separation = kDefaultSeparation;
    // Roots whose |Im| exceeds imag_tol * max(1, |root|) make the spectrum non-real.
    double imag_tol = 1e-8;
};

// Monic f(lambda) = (-1)^n det(L - lambda E), ascending coefficients.
Polynomial char_poly(const LaxMatrix& l);

// Sorted eigenvalues. All b_i > 0: Sturm bisection on the symmetrization.
// Otherwise: roots of char_poly.
Spectrum spectrum(const LaxMatrix& l, const SpectrumOptions& opts = {});

// Eigenvalues of a tridiagonal block with diagonal `a` (size m >= 1) and
// off-diagonal products `b` (size m - 1). Same dispatch as spectrum(), but
// returns raw sorted values without the distinctness check.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> a, std::span<const double> b,
                                            double imag_tol = SpectrumOptions{}.imag_tol);

// The two eigenvalue routes, exposed so they can be cross-checked.
std::vector<double> sturm_eigenvalues(std::span<const double> a, std::span<const double> b);
std::vector<double> char_poly_eigenvalues(const Polynomial& f, double imag_tol);

// Determinant of m[rows, cols]. Index lists are 0-based, strictly increasing,
// of equal nonzero length; BadIndex otherwise.
double minor(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

// Delta_{1,1}(lambda): the (1,1) cofactor of L - lambda E, degree n - 1,
// leading coefficient (-1)^(n-1).
Polynomial chop_integral(const LaxMatrix& l);

// Delta_{1,1}(lambda) evaluated by the trailing-block recurrence, without
// going through coefficients.
double chop_integral_at(const LaxMatrix& l, double lambda);

// v_-[j] = det(lambda E - L)[1..j-1], monic of degree j - 1 (the N-th row
// cofactors up to the global sign (-1)^(N-1)).
// v_+[j] = (-1)^(1+j) Delta_{1,j}(lambda) = (-1)^(j-1) b_1...b_{j-1} det(L - lambda E)[j+1..N].
// With these signs Delta_{1,1}(lambda_i) * v_-(lambda_i) = v_+(lambda_i) at every eigenvalue.
CofactorVectors cofactor_vectors(const LaxMatrix& l);

struct ComponentDivisor {
    std::vector<std::complex<double>> roots_minus;  // k - 1 roots in x
    std::vector<std::complex<double>> roots_plus;   // n - k roots in y
    bool off_real_axis = false;
};

// Zeros of the k-th (1-based) components of v_- and v_+.
ComponentDivisor divisor_of_component(const LaxMatrix& l, int k);

}  // namespace toda
