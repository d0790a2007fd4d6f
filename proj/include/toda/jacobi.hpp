#pragma once

// The Jacobi-variety side of the Toda lattice.
//
// For a simple spectrum lambda_1 < ... < lambda_n the generalized Jacobi
// variety of the nodal spectral curve is (C^x)^n / C^x: nonvanishing value
// tuples [F_1 : ... : F_n] at the nodes, modulo overall scale. The real part
// splits into 2^(n-1) sign components.
//
//   abel_jacobi   L  ->  [Delta_11(lambda_1) : ... : Delta_11(lambda_n)]
//   evolve_point  F  ->  [e^{t lambda_1} F_1 : ... : e^{t lambda_n} F_n]
//   reconstruct   F  ->  L with b_k = tau_{k-1} tau_{k+1} / tau_k^2,
//                             a_k = tau'_k / tau_k - tau'_{k-1} / tau_{k-1}
//
// Tau functions are n x n determinants
//
//   tau_k  = eps_k det(1, lam, ..., lam^{n-k-1}, F, F lam, ..., F lam^{k-1})
//   tau'_k = eps_k det(1, lam, ..., lam^{n-k-1}, F, ..., F lam^{k-2}, F lam^k)
//
// with tau'_0 = 0 and eps_k = (-1)^{k(2n-k-1)/2}. With that sign every tau_k
// is strictly positive on the sign-alternating cone, and tau'_k is the time
// derivative of tau_k along the linear flow.

#include <span>
#include <string>
#include <vector>

#include "toda/lax.hpp"
#include "toda/matrix.hpp"

namespace toda {

// |tau_k| below this fraction of the sum of its absolute Laplace terms
// counts as a vanishing tau (non-general point).
inline constexpr double kGeneralityThreshold = 1e-12;

// Projective point with the representative f_1 = 1.
class JacobiPoint {
public:
    // Normalizes by the first entry. InvalidJacobiPoint on an empty input or
    // a zero / non-finite entry.
    static JacobiPoint from_raw(std::span<const double> raw);

    const std::vector<double>& f() const noexcept { return f_; }
    std::size_t size() const noexcept { return f_.size(); }
    double operator[](std::size_t i) const { return f_[i]; }

    friend bool operator==(const JacobiPoint&, const JacobiPoint&) = default;

private:
    explicit JacobiPoint(std::vector<double> f) : f_(std::move(f)) {}
    std::vector<double> f_;
};

// max_i |p_i - q_i| / max(|p_i|, |q_i|) over normalized coordinates.
double relative_distance(const JacobiPoint& p, const JacobiPoint& q);

struct TauSequence {
    std::vector<double> tau;        // k = 0..n
    std::vector<double> tau_prime;  // k = 0..n, tau_prime[0] = 0
    std::vector<SignedLog> tau_log;
    std::vector<SignedLog> tau_prime_log;
    // |tau_k| / sum of |Laplace terms|; 1 when no cancellation, 0 when tau_k vanishes.
    std::vector<double> generality;
};

// eps_k for size n.
int tau_sign(int n, int k);

// Degenerate theta function: det(1, ..., lam^{n-k-1}, Z, ..., Z lam^{k-1}) / sqrt(Z_1...Z_n).
// NonPositiveZ unless every Z_i > 0.
double theta(int k, std::span<const double> z, const Spectrum& spec);

TauSequence tau_sequence(const Spectrum& spec, std::span<const double> f);
TauSequence tau_sequence(const Spectrum& spec, const JacobiPoint& f);

JacobiPoint abel_jacobi(const LaxMatrix& l, const Spectrum& spec);
JacobiPoint abel_jacobi(const LaxMatrix& l, const SpectrumOptions& opts = {});

// NonGeneralDivisor(k) if some tau_k, 1 <= k <= n-1, vanishes.
LaxMatrix reconstruct(const Spectrum& spec, const JacobiPoint& f);

JacobiPoint evolve_point(const JacobiPoint& f0, const Spectrum& spec, double t);

struct SignComponent {
    std::vector<int> signs;  // signs of f_2..f_n under f_1 = 1

    bool alternating() const;
    std::string to_string() const;  // "+" / "-" per entry
    friend bool operator==(const SignComponent&, const SignComponent&) = default;
};

struct SignDiagnosis {
    SignComponent component;
    bool in_positive_cone = false;  // (-1)^{i-1} f_i > 0 for all i
};

SignDiagnosis sign_component(const JacobiPoint& f);

// All 2^(n-1) components, the alternating one first.
std::vector<SignComponent> all_sign_components(std::size_t n);

bool is_general_point(const Spectrum& spec, const JacobiPoint& f);

}  // namespace toda
