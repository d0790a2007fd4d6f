#include "toda/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toda {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(double c, int degree) {
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(double c0, double c1) { return Polynomial(std::vector<double>{c0, c1}); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::coeff(int i) const noexcept {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(i)];
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<double> out(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] += p.coeffs_[i];
    for (std::size_t i = 0; i < q.coeffs_.size(); ++i) out[i] += q.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-1.0) * q; }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> out(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j) out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> out = p.coeffs_;
    for (double& c : out) c *= s;
    return Polynomial(std::move(out));
}

std::vector<std::complex<double>> polynomial_roots(const Polynomial& p) {
    using cd = std::complex<double>;
    if (p.is_zero()) throw std::invalid_argument("polynomial_roots: zero polynomial");
    const int n = p.degree();
    if (n == 0) return {};

    // Monic copy keeps the Cauchy bound and the iteration well scaled.
    std::vector<double> monic(p.coeffs());
    const double lead = monic.back();
    for (double& c : monic) c /= lead;
    const Polynomial q(monic);
    const Polynomial dq = q.derivative();

    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(monic[static_cast<std::size_t>(i)]));
    const double radius = 0.5 * (1.0 + bound);

    std::vector<cd> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
        z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
    }

    for (int iter = 0; iter < 500; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const cd value = q(z[k]);
            if (value == cd(0.0)) continue;
            const cd ratio = value / dq(z[k]);
            cd repulsion = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            const cd step = ratio / (1.0 - ratio * repulsion);
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (max_step < 1e-15) break;
    }

    // Newton polish on the original polynomial.
    const Polynomial dp = p.derivative();
    for (cd& r : z) {
        for (int it = 0; it < 5; ++it) {
            const cd d = dp(r);
            if (d == cd(0.0)) break;
            const cd step = p(r) / d;
            r -= step;
            if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(r))) break;
        }
    }
    std::sort(z.begin(), z.end(), [](cd a, cd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return z;
}

}  // namespace toda
