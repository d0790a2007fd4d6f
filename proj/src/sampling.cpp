#include "toda/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace toda {

Rng sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
    return Rng(seq);
}

Spectrum sample_spectrum(Rng& rng, std::size_t n, const SamplingRanges& r) {
    if (n == 0) throw std::invalid_argument("sample_spectrum: n must be positive");
    if (!(r.lambda_min < r.lambda_max)) throw std::invalid_argument("sample_spectrum: empty range");
    if (r.min_gap * static_cast<double>(n) >= r.lambda_max - r.lambda_min)
        throw std::invalid_argument("sample_spectrum: minimum gap too large for the range");
    std::uniform_real_distribution<double> u(r.lambda_min, r.lambda_max);
    std::vector<double> lambdas(n);
    for (;;) {
        for (double& v : lambdas) v = u(rng);
        std::sort(lambdas.begin(), lambdas.end());
        bool ok = true;
        for (std::size_t i = 1; i < n; ++i) ok = ok && (lambdas[i] - lambdas[i - 1] >= r.min_gap);
        if (ok) return Spectrum(lambdas);
    }
}

JacobiPoint sample_point(Rng& rng, const SignComponent& component, const SamplingRanges& r) {
    std::uniform_real_distribution<double> u(-r.log_f_max, r.log_f_max);
    std::vector<double> f{1.0};
    for (int s : component.signs) f.push_back(s * std::exp(u(rng)));
    return JacobiPoint::from_raw(f);
}

JacobiPoint sample_cone_point(Rng& rng, std::size_t n, const SamplingRanges& r) {
    return sample_point(rng, all_sign_components(n).front(), r);
}

LaxMatrix sample_tnn_lax(Rng& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> d(n), l(n - 1);
    for (double& v : d) v = u(rng);
    for (double& v : l) v = u(rng);
    std::vector<double> a(n), b(n - 1);
    a[0] = d[0];
    for (std::size_t i = 1; i < n; ++i) a[i] = d[i] + l[i - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = l[i] * d[i];
    return LaxMatrix(std::move(a), std::move(b));
}

LaxMatrix sample_positive_offdiagonal(Rng& rng, std::size_t n, double a_lo, double a_hi, double b_lo,
                                      double b_hi) {
    std::uniform_real_distribution<double> ua(a_lo, a_hi), ub(b_lo, b_hi);
    std::vector<double> a(n), b(n - 1);
    for (double& v : a) v = ua(rng);
    for (double& v : b) v = ub(rng);
    return LaxMatrix(std::move(a), std::move(b));
}

}  // namespace toda
