#include "toda/tnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "toda/errors.hpp"

namespace toda {

std::string to_string(TnnMethod m) {
    switch (m) {
        case TnnMethod::exhaustive:
            return "exhaustive";
        case TnnMethod::tridiagonal_criterion:
            return "tridiagonal-criterion";
        case TnnMethod::interlacing:
            return "interlacing";
    }
    return "unknown";
}

namespace {

// Advances idx to the next k-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void require_square_small(const Matrix& m, const char* who) {
    if (!m.square()) throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (m.rows() > kMaxExhaustiveSize)
        throw TooLarge(std::string(who) + ": size " + std::to_string(m.rows()) + " exceeds " +
                       std::to_string(kMaxExhaustiveSize));
}

// Calls visit(rows, cols, value) for every minor in enumeration order until it returns false.
template <typename Visit>
void for_each_minor(const Matrix& m, Visit&& visit) {
    const std::size_t n = m.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> rows(k);
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::vector<std::size_t> cols(k);
            std::iota(cols.begin(), cols.end(), 0);
            do {
                if (!visit(rows, cols, minor(m, rows, cols))) return;
            } while (next_combination(cols, n));
        } while (next_combination(rows, n));
    }
}

// Rounding level of a minor computed by elimination: a multiple of eps times
// the Hadamard bound of the submatrix. Values below it are zero to working
// precision, which matters for the many minors of banded matrices that vanish
// identically.
double elimination_floor(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    double hadamard = 1.0;
    for (std::size_t r : rows) {
        double norm2 = 0.0;
        for (std::size_t c : cols) norm2 += m(r, c) * m(r, c);
        hadamard *= std::sqrt(norm2);
    }
    return 4.0 * static_cast<double>(rows.size()) * std::numeric_limits<double>::epsilon() * hadamard;
}

void require_tridiagonal(const Matrix& m) {
    if (!m.square()) throw NotTridiagonal("matrix not square");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((i > j + 1 || j > i + 1) && m(i, j) != 0.0)
                throw NotTridiagonal("nonzero entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                     ") outside the three bands");
}

}  // namespace

TnnReport is_tnn_exhaustive(const Matrix& m, double tol) {
    require_square_small(m, "is_tnn_exhaustive");
    TnnReport report{true, std::nullopt, TnnMethod::exhaustive};
    for_each_minor(m, [&](const auto& rows, const auto& cols, double v) {
        if (v < -tol && -v > elimination_floor(m, rows, cols)) {
            report.is_tnn = false;
            report.witness = MinorWitness{rows, cols, v};
            return false;
        }
        return true;
    });
    return report;
}

TnnReport is_tnn_tridiagonal(const Matrix& m, double tol) {
    require_tridiagonal(m);
    const std::size_t n = m.rows();
    TnnReport report{true, std::nullopt, TnnMethod::tridiagonal_criterion};
    auto fail = [&](std::vector<std::size_t> rows, std::vector<std::size_t> cols, double v) {
        report.is_tnn = false;
        report.witness = MinorWitness{std::move(rows), std::move(cols), v};
        return report;
    };

    // Size 1: band entries, row-major.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = (i == 0 ? 0 : i - 1); j <= std::min(n - 1, i + 1); ++j)
            if (m(i, j) < -tol) return fail({i}, {j}, m(i, j));

    // det[s..e] by the three-term recurrence, for increasing block size.
    std::vector<std::vector<double>> det(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) det[s][s] = m(s, s);
    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t s = 0; s + len <= n; ++s) {
            const std::size_t e = s + len - 1;
            const double coupling = m(e - 1, e) * m(e, e - 1);
            const double before = (len == 2) ? 1.0 : det[s][e - 2];
            det[s][e] = m(e, e) * det[s][e - 1] - coupling * before;
            if (det[s][e] < -tol) {
                std::vector<std::size_t> idx(len);
                std::iota(idx.begin(), idx.end(), s);
                return fail(idx, idx, det[s][e]);
            }
        }
    }
    return report;
}

TnnReport is_tnn_tridiagonal(const LaxMatrix& l, double tol) { return is_tnn_tridiagonal(l.dense(), tol); }

bool is_totally_positive(const Matrix& m) {
    require_square_small(m, "is_totally_positive");
    bool all_positive = true;
    for_each_minor(m, [&](const auto&, const auto&, double v) {
        if (!(v > 0.0)) {
            all_positive = false;
            return false;
        }
        return true;
    });
    return all_positive;
}

IrreducibilityResult is_irreducible_tnn(const Matrix& l, int k_max) {
    if (!is_tnn_tridiagonal(l).is_tnn) throw NotTnn("is_irreducible_tnn: matrix is not TNN");
    if (l.rows() > kMaxExhaustiveSize) throw TooLarge("is_irreducible_tnn: size exceeds 8");
    IrreducibilityResult out;
    out.k_max = k_max > 0 ? k_max : static_cast<int>(2 * l.rows());
    Matrix power = l;
    for (int k = 1; k <= out.k_max; ++k) {
        if (k > 1) power = power * l;
        if (is_totally_positive(power)) {
            out.irreducible = true;
            out.power = k;
            return out;
        }
    }
    return out;
}

IrreducibilityResult is_irreducible_tnn(const LaxMatrix& l, int k_max) {
    return is_irreducible_tnn(l.dense(), k_max);
}

InterlacingData interlacing_spectra(const LaxMatrix& l, const SpectrumOptions& opts) {
    const std::size_t n = l.size();
    const auto& a = l.a();
    const auto& b = l.b();
    std::span<const double> as(a), bs(b);
    return InterlacingData{
        spectrum(l, opts),
        tridiagonal_eigenvalues(as.subspan(1), bs.subspan(1), opts.imag_tol),
        tridiagonal_eigenvalues(as.first(n - 1), bs.first(n - 2), opts.imag_tol),
    };
}

bool strictly_interlaces(const std::vector<double>& lambdas, const std::vector<double>& mus) {
    if (lambdas.empty() || mus.size() + 1 != lambdas.size()) return false;
    if (!(lambdas[0] > 0.0)) return false;
    for (std::size_t i = 0; i < mus.size(); ++i)
        if (!(lambdas[i] < mus[i] && mus[i] < lambdas[i + 1])) return false;
    return true;
}

bool check_interlacing(const InterlacingData& data) { return strictly_interlaces(data.lambdas.values(), data.mus); }

TnnReport is_tnn_interlacing(const LaxMatrix& l) {
    TnnReport report{false, std::nullopt, TnnMethod::interlacing};
    if (!l.positive_offdiagonal()) return report;
    report.is_tnn = check_interlacing(interlacing_spectra(l));
    return report;
}

}  // namespace toda
