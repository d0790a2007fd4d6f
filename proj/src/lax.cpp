#include "toda/lax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "toda/errors.hpp"

namespace toda {

LaxMatrix::LaxMatrix(std::vector<double> a, std::vector<double> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() < 2) throw InvalidLaxMatrix("LaxMatrix: size must be at least 2");
    if (b_.size() + 1 != a_.size())
        throw InvalidLaxMatrix("LaxMatrix: expected " + std::to_string(a_.size() - 1) +
                               " subdiagonal entries, got " + std::to_string(b_.size()));
    for (double v : a_)
        if (!std::isfinite(v)) throw InvalidLaxMatrix("LaxMatrix: non-finite diagonal entry");
    for (std::size_t i = 0; i < b_.size(); ++i) {
        if (!std::isfinite(b_[i])) throw InvalidLaxMatrix("LaxMatrix: non-finite subdiagonal entry");
        if (b_[i] == 0.0)
            throw InvalidLaxMatrix("LaxMatrix: b_" + std::to_string(i + 1) + " = 0 (outside phase space)");
    }
}

LaxMatrix LaxMatrix::from_dense(const Matrix& m) {
    if (!m.square()) throw InvalidLaxMatrix("LaxMatrix::from_dense: matrix not square");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((i > j + 1 || j > i + 1) && m(i, j) != 0.0)
                throw NotTridiagonal("LaxMatrix::from_dense: nonzero entry outside the three bands");
    std::vector<double> a(n), b(n == 0 ? 0 : n - 1);
    for (std::size_t i = 0; i < n; ++i) a[i] = m(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = m(i, i + 1) * m(i + 1, i);
    return LaxMatrix(std::move(a), std::move(b));
}

bool LaxMatrix::positive_offdiagonal() const noexcept {
    return std::all_of(b_.begin(), b_.end(), [](double v) { return v > 0.0; });
}

Matrix LaxMatrix::dense() const {
    const std::size_t n = size();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = a_[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = 1.0;
        m(i + 1, i) = b_[i];
    }
    return m;
}

Spectrum::Spectrum(std::vector<double> lambdas, double separation)
    : lambdas_(std::move(lambdas)), separation_(separation) {
    if (lambdas_.empty()) throw std::invalid_argument("Spectrum: empty");
    for (double v : lambdas_)
        if (!std::isfinite(v)) throw std::invalid_argument("Spectrum: non-finite eigenvalue");
    for (std::size_t i = 0; i + 1 < lambdas_.size(); ++i) {
        if (!(lambdas_[i + 1] - lambdas_[i] > separation_))
            throw NonSimpleSpectrum("Spectrum: eigenvalues " + std::to_string(i + 1) + " and " +
                                    std::to_string(i + 2) + " are not increasing and separated");
    }
}

double Spectrum::vandermonde() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lambdas_.size(); ++i)
        for (std::size_t j = i + 1; j < lambdas_.size(); ++j) v *= lambdas_[j] - lambdas_[i];
    return v;
}

Polynomial char_poly(const LaxMatrix& l) {
    // p_i = (lambda - a_i) p_{i-1} - b_{i-1} p_{i-2}: leading principal minors of lambda E - L.
    Polynomial prev = Polynomial::constant(1.0);
    Polynomial cur = Polynomial::linear(-l.a()[0], 1.0);
    for (std::size_t i = 1; i < l.size(); ++i) {
        Polynomial next = Polynomial::linear(-l.a()[i], 1.0) * cur - l.b()[i - 1] * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

// Number of eigenvalues strictly below x of the symmetric tridiagonal matrix
// with diagonal a and squared off-diagonals b.
std::size_t sturm_count(std::span<const double> a, std::span<const double> b, double x, double pivmin) {
    std::size_t count = 0;
    double q = a[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
        if (i + 1 == a.size()) break;
        q = a[i + 1] - x - b[i] / q;
    }
    return count;
}

}  // namespace

std::vector<double> sturm_eigenvalues(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    if (b.size() + 1 != n) throw std::invalid_argument("sturm_eigenvalues: size mismatch");
    if (n == 1) return {a[0]};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && !(b[i] > 0.0)) throw std::invalid_argument("sturm_eigenvalues: needs b_i > 0");
        const double r = (i > 0 ? std::sqrt(b[i - 1]) : 0.0) + (i + 1 < n ? std::sqrt(b[i]) : 0.0);
        lo = std::min(lo, a[i] - r);
        hi = std::max(hi, a[i] + r);
        scale = std::max({scale, std::abs(a[i]), r});
    }
    const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
    lo -= pad;
    hi += pad;
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, scale * scale);

    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double left = lo, right = hi;
        for (int it = 0; it < 2000; ++it) {
            const double mid = 0.5 * (left + right);
            if (mid <= left || mid >= right) break;
            if (sturm_count(a, b, mid, pivmin) > k)
                right = mid;
            else
                left = mid;
        }
        out[k] = 0.5 * (left + right);
    }
    return out;
}

std::vector<double> char_poly_eigenvalues(const Polynomial& f, double imag_tol) {
    const auto roots = polynomial_roots(f);
    std::vector<double> out;
    out.reserve(roots.size());
    for (const auto& r : roots) {
        if (std::abs(r.imag()) > imag_tol * std::max(1.0, std::abs(r)))
            throw NonRealSpectrum("characteristic polynomial has a non-real root (" + std::to_string(r.real()) +
                                  (r.imag() < 0 ? " - " : " + ") + std::to_string(std::abs(r.imag())) + "i)");
        out.push_back(r.real());
    }
    // Polish the real parts against the real polynomial.
    const Polynomial df = f.derivative();
    for (double& x : out) {
        for (int it = 0; it < 4; ++it) {
            const double d = df(x);
            if (d == 0.0) break;
            const double step = f(x) / d;
            if (!std::isfinite(step)) break;
            x -= step;
            if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(x))) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> a, std::span<const double> b, double imag_tol) {
    if (a.empty()) return {};
    if (b.size() + 1 != a.size()) throw std::invalid_argument("tridiagonal_eigenvalues: size mismatch");
    if (std::all_of(b.begin(), b.end(), [](double v) { return v > 0.0; })) return sturm_eigenvalues(a, b);
    Polynomial prev = Polynomial::constant(1.0);
    Polynomial cur = Polynomial::linear(-a[0], 1.0);
    for (std::size_t i = 1; i < a.size(); ++i) {
        Polynomial next = Polynomial::linear(-a[i], 1.0) * cur - b[i - 1] * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return char_poly_eigenvalues(cur, imag_tol);
}

Spectrum spectrum(const LaxMatrix& l, const SpectrumOptions& opts) {
    return Spectrum(tridiagonal_eigenvalues(l.a(), l.b(), opts.imag_tol), opts.separation);
}

namespace {

void check_index_list(std::span<const std::size_t> idx, std::size_t bound, const char* what) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= bound) throw BadIndex(std::string("minor: ") + what + " index out of range");
        if (i > 0 && idx[i] <= idx[i - 1])
            throw BadIndex(std::string("minor: ") + what + " indices not strictly increasing");
    }
}

}  // namespace

double minor(const Matrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    if (rows.empty() || rows.size() != cols.size()) throw BadIndex("minor: index lists must have equal nonzero length");
    check_index_list(rows, m.rows(), "row");
    check_index_list(cols, m.cols(), "column");
    auto at = [&](std::size_t i, std::size_t j) { return m(rows[i], cols[j]); };
    switch (rows.size()) {
        case 1:
            return at(0, 0);
        case 2:
            return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        case 3:
            return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                   at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                   at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        default:
            return determinant(m.select(rows, cols));
    }
}

namespace {

// det(L - lambda E)[m..n] for m = 1..n+1 (1-based), i.e. out[m-1]; out[n] = 1.
std::vector<Polynomial> trailing_blocks(const LaxMatrix& l) {
    const std::size_t n = l.size();
    std::vector<Polynomial> t(n + 1);
    t[n] = Polynomial::constant(1.0);
    t[n - 1] = Polynomial::linear(l.a()[n - 1], -1.0);
    for (std::size_t m = n - 1; m-- > 0;)
        t[m] = Polynomial::linear(l.a()[m], -1.0) * t[m + 1] - l.b()[m] * t[m + 2];
    return t;
}

}  // namespace

Polynomial chop_integral(const LaxMatrix& l) { return trailing_blocks(l)[1]; }

double chop_integral_at(const LaxMatrix& l, double lambda) {
    const std::size_t n = l.size();
    double next = 1.0;                      // block [n+1..n]
    double cur = l.a()[n - 1] - lambda;     // block [n..n]
    for (std::size_t m = n - 1; m-- > 1;) {  // blocks [m+1..n] for m+1 = n-1 .. 2
        const double v = (l.a()[m] - lambda) * cur - l.b()[m] * next;
        next = cur;
        cur = v;
    }
    return cur;
}

CofactorVectors cofactor_vectors(const LaxMatrix& l) {
    const std::size_t n = l.size();
    CofactorVectors out;
    out.minus.variable = Variable::x;
    out.plus.variable = Variable::y;

    // Leading blocks of lambda E - L.
    out.minus.entries.reserve(n);
    out.minus.entries.push_back(Polynomial::constant(1.0));
    if (n > 1) out.minus.entries.push_back(Polynomial::linear(-l.a()[0], 1.0));
    for (std::size_t j = 2; j < n; ++j) {
        out.minus.entries.push_back(Polynomial::linear(-l.a()[j - 1], 1.0) * out.minus.entries[j - 1] -
                                    l.b()[j - 2] * out.minus.entries[j - 2]);
    }

    const auto t = trailing_blocks(l);
    double bprod = 1.0;
    out.plus.entries.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        out.plus.entries.push_back((sign * bprod) * t[j + 1]);
        if (j + 1 < n) bprod *= l.b()[j];
    }
    return out;
}

ComponentDivisor divisor_of_component(const LaxMatrix& l, int k) {
    const int n = static_cast<int>(l.size());
    if (k < 1 || k > n) throw BadIndex("divisor_of_component: component index out of range");
    const auto v = cofactor_vectors(l);
    const Polynomial& pm = v.minus[static_cast<std::size_t>(k - 1)];
    const Polynomial& pp = v.plus[static_cast<std::size_t>(k - 1)];
    if (pm.is_zero() || pp.is_zero())
        throw DegenerateComponent("divisor_of_component: component " + std::to_string(k) + " vanishes identically");
    ComponentDivisor out;
    out.roots_minus = polynomial_roots(pm);
    out.roots_plus = polynomial_roots(pp);
    auto off_axis = [](const std::complex<double>& z) {
        return std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z));
    };
    out.off_real_axis = std::any_of(out.roots_minus.begin(), out.roots_minus.end(), off_axis) ||
                        std::any_of(out.roots_plus.begin(), out.roots_plus.end(), off_axis);
    return out;
}

}  // namespace toda
