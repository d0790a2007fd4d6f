#include "toda/jacobi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "toda/errors.hpp"

namespace toda {

JacobiPoint JacobiPoint::from_raw(std::span<const double> raw) {
    if (raw.empty()) throw InvalidJacobiPoint("JacobiPoint: empty tuple");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) throw InvalidJacobiPoint("JacobiPoint: non-finite entry");
        if (raw[i] == 0.0) throw InvalidJacobiPoint("JacobiPoint: entry " + std::to_string(i + 1) + " is zero");
    }
    std::vector<double> f(raw.begin(), raw.end());
    const double first = f[0];
    for (double& v : f) v /= first;
    f[0] = 1.0;
    return JacobiPoint(std::move(f));
}

double relative_distance(const JacobiPoint& p, const JacobiPoint& q) {
    if (p.size() != q.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double scale = std::max(std::abs(p[i]), std::abs(q[i]));
        worst = std::max(worst, std::abs(p[i] - q[i]) / scale);
    }
    return worst;
}

int tau_sign(int n, int k) { return ((k * (2 * n - k - 1) / 2) % 2 == 0) ? 1 : -1; }

namespace {

// Tau sums and cofactor values are accumulated in extended precision. Close
// to the non-general locus the reconstruction subtracts nearly equal ratios
// tau'_k / tau_k, and near-sorted matrices put eigenvalues of L within 1e-10
// of eigenvalues of its trailing block; double precision alone loses up to
// six digits in either case.
using Extended = long double;

struct ExtendedLog {
    int sign = 0;
    Extended log_abs = -std::numeric_limits<Extended>::infinity();

    Extended value() const { return sign == 0 ? Extended(0) : sign * std::exp(log_abs); }
};

struct LaplaceSum {
    ExtendedLog value;
    Extended log_scale = 0;  // log of the sum of absolute terms

    double generality() const {
        return value.sign == 0 ? 0.0 : static_cast<double>(std::exp(value.log_abs - log_scale));
    }
};

// The determinant with Vandermonde columns lam^0..lam^{n-k-1} and F columns
// F lam^0..F lam^{k-1} (prime = false), or with the top F power raised to k
// (prime = true), as the Laplace expansion along the F columns. The term for a
// k-subset S of rows is
//   (-1)^{rows(S) + cols} prod_S F_i V(S) V(S^c) [e_1(S) for the prime],
// since raising the top power of a Vandermonde by one multiplies it by the sum
// of its nodes. Terms are accumulated in log form so huge F never overflows.
LaplaceSum laplace_tau(const Spectrum& spec, std::span<const double> f, int k, bool prime) {
    const std::size_t n = spec.size();
    int col_sum = 0;
    for (int j = static_cast<int>(n) - k + 1; j <= static_cast<int>(n); ++j) col_sum += j;

    std::vector<Extended> logs;
    std::vector<int> signs;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        Extended lt = 0, e1 = 0;
        int sign = 1, row_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_i = mask & (1u << i);
            if (in_i) {
                lt += std::log(std::abs(Extended(f[i])));
                if (f[i] < 0) sign = -sign;
                row_sum += static_cast<int>(i) + 1;
                e1 += spec[i];
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool in_j = mask & (1u << j);
                if (in_i == in_j) lt += std::log(Extended(spec[j]) - Extended(spec[i]));
            }
        }
        if (prime) {
            if (e1 == 0) continue;
            lt += std::log(std::abs(e1));
            if (e1 < 0) sign = -sign;
        }
        if ((row_sum + col_sum) % 2 != 0) sign = -sign;
        logs.push_back(lt);
        signs.push_back(sign);
    }

    LaplaceSum out;
    if (logs.empty()) {
        out.log_scale = -std::numeric_limits<Extended>::infinity();
        return out;
    }
    const Extended top = *std::max_element(logs.begin(), logs.end());
    Extended sum = 0, abs_sum = 0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const Extended w = std::exp(logs[i] - top);
        sum += signs[i] * w;
        abs_sum += w;
    }
    out.log_scale = top + std::log(abs_sum);
    if (sum != 0) out.value = ExtendedLog{sum > 0 ? 1 : -1, top + std::log(std::abs(sum))};
    return out;
}

// Calibrated taus: tau_k = eps_k det_k and tau'_k = eps_k det'_k.
struct TauTable {
    std::vector<ExtendedLog> tau, tau_prime;
    std::vector<double> generality;
};

TauTable tau_table(const Spectrum& spec, std::span<const double> f) {
    const int n = static_cast<int>(spec.size());
    if (f.size() != spec.size()) throw std::invalid_argument("tau_sequence: tuple size does not match spectrum");
    for (double v : f)
        if (v == 0.0 || !std::isfinite(v)) throw InvalidJacobiPoint("tau_sequence: tuple must be nonvanishing");

    TauTable out;
    for (int k = 0; k <= n; ++k) {
        const int eps = tau_sign(n, k);
        const LaplaceSum t = laplace_tau(spec, f, k, false);
        out.tau.push_back({t.value.sign * eps, t.value.log_abs});
        out.generality.push_back(t.generality());
        if (k == 0) {
            out.tau_prime.emplace_back();
            continue;
        }
        const LaplaceSum tp = laplace_tau(spec, f, k, true);
        out.tau_prime.push_back({tp.value.sign * eps, tp.value.log_abs});
    }
    return out;
}

SignedLog to_signed_log(const ExtendedLog& x) {
    return SignedLog{x.sign, x.sign == 0 ? -std::numeric_limits<double>::infinity() : static_cast<double>(x.log_abs)};
}


// Newton refinement of an eigenvalue of l from a double-precision estimate.
Extended refine_eigenvalue(const LaxMatrix& l, double lambda) {
    const std::size_t n = l.size();
    Extended x = lambda;
    for (int it = 0; it < 4; ++it) {
        Extended p0 = 1, p1 = Extended(l.a()[0]) - x, d0 = 0, d1 = -1;
        for (std::size_t k = 1; k < n; ++k) {
            const Extended c = Extended(l.a()[k]) - x;
            const Extended bk = l.b()[k - 1];
            const Extended p2 = c * p1 - bk * p0;
            const Extended d2 = -p1 + c * d1 - bk * d0;
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        if (p1 == 0 || d1 == 0 || !std::isfinite(static_cast<double>(p1 / d1))) break;
        x -= p1 / d1;
    }
    // A spectrum that does not belong to l is evaluated as given.
    const double drift = std::abs(static_cast<double>(x) - lambda);
    if (!(drift <= 1e-8 * std::max(1.0, std::abs(lambda)))) return lambda;
    return x;
}

struct CofactorValue {
    Extended value = 0;
    Extended bound = 0;  // recurrence run on absolute values
    Extended slope = 0;  // derivative of the bound in lambda
};

CofactorValue chop_integral_extended(const LaxMatrix& l, Extended lambda) {
    const std::size_t n = l.size();
    Extended next = 1, cur = Extended(l.a()[n - 1]) - lambda;
    Extended bnext = 1, bcur = std::abs(cur);
    Extended dnext = 0, dcur = 1;
    for (std::size_t m = n - 1; m-- > 1;) {
        const Extended c = Extended(l.a()[m]) - lambda;
        const Extended bm = l.b()[m];
        const Extended v = c * cur - bm * next;
        const Extended bv = std::abs(c) * bcur + std::abs(bm) * bnext;
        const Extended dv = bcur + std::abs(c) * dcur + std::abs(bm) * dnext;
        next = cur;
        cur = v;
        bnext = bcur;
        bcur = bv;
        dnext = dcur;
        dcur = dv;
    }
    return {cur, bcur, dcur};
}

}  // namespace

double theta(int k, std::span<const double> z, const Spectrum& spec) {
    const int n = static_cast<int>(spec.size());
    if (k < 0 || k > n) throw BadIndex("theta: k out of range");
    if (z.size() != spec.size()) throw std::invalid_argument("theta: tuple size does not match spectrum");
    Extended half_log = 0;
    for (double v : z) {
        if (!(v > 0.0)) throw NonPositiveZ("theta: every Z_i must be positive");
        half_log += std::log(Extended(v)) / 2;
    }
    const ExtendedLog det = laplace_tau(spec, z, k, false).value;
    return det.sign == 0 ? 0.0 : static_cast<double>(det.sign * std::exp(det.log_abs - half_log));
}

TauSequence tau_sequence(const Spectrum& spec, std::span<const double> f) {
    const TauTable table = tau_table(spec, f);
    TauSequence out;
    out.generality = table.generality;
    for (std::size_t k = 0; k < table.tau.size(); ++k) {
        out.tau_log.push_back(to_signed_log(table.tau[k]));
        out.tau_prime_log.push_back(to_signed_log(table.tau_prime[k]));
        out.tau.push_back(static_cast<double>(table.tau[k].value()));
        out.tau_prime.push_back(static_cast<double>(table.tau_prime[k].value()));
    }
    return out;
}

TauSequence tau_sequence(const Spectrum& spec, const JacobiPoint& f) { return tau_sequence(spec, f.f()); }

JacobiPoint abel_jacobi(const LaxMatrix& l, const Spectrum& spec) {
    if (spec.size() != l.size()) throw std::invalid_argument("abel_jacobi: spectrum size mismatch");
    double scale = 1.0;
    for (double v : l.a()) scale = std::max(scale, std::abs(v));
    for (double v : l.b()) scale = std::max(scale, std::sqrt(std::abs(v)));
    scale = std::max({scale, std::abs(spec.min()), std::abs(spec.max())});
    const auto n = static_cast<Extended>(l.size());
    const Extended eps = std::numeric_limits<Extended>::epsilon();
    const Extended eigen_error = 16 * n * eps * scale;

    std::vector<double> f(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        const CofactorValue c = chop_integral_extended(l, refine_eigenvalue(l, spec[i]));
        if (std::abs(c.value) <= 64 * n * eps * c.bound + eigen_error * c.slope)
            throw ZeroCofactorValue("abel_jacobi: Delta_11 vanishes at eigenvalue " + std::to_string(i + 1),
                                    static_cast<int>(i) + 1);
        f[i] = static_cast<double>(c.value);
    }
    return JacobiPoint::from_raw(f);
}

JacobiPoint abel_jacobi(const LaxMatrix& l, const SpectrumOptions& opts) { return abel_jacobi(l, spectrum(l, opts)); }

LaxMatrix reconstruct(const Spectrum& spec, const JacobiPoint& f) {
    const std::size_t n = spec.size();
    if (f.size() != n) throw std::invalid_argument("reconstruct: point size does not match spectrum");
    if (n < 2) throw std::invalid_argument("reconstruct: size must be at least 2");
    const TauTable ts = tau_table(spec, f.f());
    for (std::size_t k = 1; k < n; ++k)
        if (!(ts.generality[k] > kGeneralityThreshold))
            throw NonGeneralDivisor("reconstruct: tau_" + std::to_string(k) + " vanishes (non-general point)",
                                    static_cast<int>(k));

    auto ratio = [&](std::size_t k) -> Extended {  // tau'_k / tau_k
        const ExtendedLog& p = ts.tau_prime[k];
        const ExtendedLog& q = ts.tau[k];
        if (p.sign == 0) return 0;
        return p.sign * q.sign * std::exp(p.log_abs - q.log_abs);
    };

    std::vector<double> a(n), b(n - 1);
    for (std::size_t k = 1; k <= n; ++k) a[k - 1] = static_cast<double>(ratio(k) - ratio(k - 1));
    for (std::size_t k = 1; k < n; ++k) {
        const int sign = ts.tau[k - 1].sign * ts.tau[k + 1].sign;
        b[k - 1] = static_cast<double>(sign * std::exp(ts.tau[k - 1].log_abs + ts.tau[k + 1].log_abs - 2 * ts.tau[k].log_abs));
    }
    return LaxMatrix(std::move(a), std::move(b));
}

JacobiPoint evolve_point(const JacobiPoint& f0, const Spectrum& spec, double t) {
    const std::size_t n = spec.size();
    if (f0.size() != n) throw std::invalid_argument("evolve_point: point size does not match spectrum");
    // Normalized coordinates directly in log form: f_i / f_1 picks up e^{t(lambda_i - lambda_1)}.
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double log_mag = std::log(std::abs(f0[i])) + t * (spec[i] - spec[0]);
        f[i] = std::copysign(std::exp(log_mag), f0[i]);
    }
    return JacobiPoint::from_raw(f);
}

bool SignComponent::alternating() const {
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] != ((i % 2 == 0) ? -1 : 1)) return false;
    return true;
}

std::string SignComponent::to_string() const {
    std::string s;
    for (int v : signs) s += (v > 0 ? '+' : '-');
    return s;
}

SignDiagnosis sign_component(const JacobiPoint& f) {
    SignDiagnosis out;
    for (std::size_t i = 1; i < f.size(); ++i) out.component.signs.push_back(f[i] > 0 ? 1 : -1);
    out.in_positive_cone = out.component.alternating();
    return out;
}

std::vector<SignComponent> all_sign_components(std::size_t n) {
    std::vector<SignComponent> out;
    if (n == 0) return out;
    const std::size_t m = n - 1;
    SignComponent cone;
    for (std::size_t i = 0; i < m; ++i) cone.signs.push_back(i % 2 == 0 ? -1 : 1);
    out.push_back(cone);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        SignComponent c;
        for (std::size_t i = 0; i < m; ++i) c.signs.push_back((mask >> i) & 1u ? -1 : 1);
        if (c != cone) out.push_back(std::move(c));
    }
    return out;
}

bool is_general_point(const Spectrum& spec, const JacobiPoint& f) {
    const TauSequence ts = tau_sequence(spec, f);
    for (std::size_t k = 1; k < spec.size(); ++k)
        if (!(ts.generality[k] > kGeneralityThreshold)) return false;
    return true;
}

}  // namespace toda
