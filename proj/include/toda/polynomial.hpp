#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace toda {

// Real univariate polynomial, coefficients in ascending order of degree:
// coeffs()[i] multiplies x^i. Trailing zeros are trimmed, so the zero
// polynomial has no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> ascending);
    Polynomial(std::initializer_list<double> ascending);

    static Polynomial constant(double c);
    static Polynomial monomial(double c, int degree);
    // c0 + c1 x
    static Polynomial linear(double c0, double c1);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
    double coeff(int i) const noexcept;
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    double operator()(double x) const;
    std::complex<double> operator()(std::complex<double> z) const;

    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(double s, const Polynomial& p);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

// All complex roots (with multiplicity) by Aberth-Ehrlich simultaneous
// iteration followed by Newton polishing. Degree 0 gives an empty list;
// the zero polynomial is rejected.
std::vector<std::complex<double>> polynomial_roots(const Polynomial& p);

}  // namespace toda
