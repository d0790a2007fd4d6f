#pragma once

// Seeded random generators for spectra, Jacobi points and Lax matrices.
// Every sample draws from its own engine keyed by (seed, stream, index), so a
// sample can be replayed alone and results do not depend on evaluation order.

#include <cstdint>
#include <random>

#include "toda/jacobi.hpp"
#include "toda/lax.hpp"

namespace toda {

using Rng = std::mt19937_64;

Rng sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

struct SamplingRanges {
    double lambda_min = 0.1;
    double lambda_max = 10.0;
    double min_gap = 0.05;
    double log_f_max = 3.0;  // log|f_i| ~ Uniform(-log_f_max, log_f_max)
};

// Sorted uniform draws on (lambda_min, lambda_max), redrawn until every gap
// is at least min_gap.
Spectrum sample_spectrum(Rng& rng, std::size_t n, const SamplingRanges& r = {});

// f_1 = 1, f_i = +-exp(u_i) with the signs of `component` (signs of f_2..f_n).
JacobiPoint sample_point(Rng& rng, const SignComponent& component, const SamplingRanges& r = {});

// Alternating signs: (-1)^{i-1} f_i > 0.
JacobiPoint sample_cone_point(Rng& rng, std::size_t n, const SamplingRanges& r = {});

// Nonsingular tridiagonal TNN matrix with positive subdiagonal from the
// bidiagonal factorization L = (unit lower, entries l_i)(upper, diagonal d_i,
// unit superdiagonal):
//   a_1 = d_1, a_i = d_i + l_{i-1}, b_i = l_i d_{i}.
// d_i, l_i ~ Uniform(lo, hi).
LaxMatrix sample_tnn_lax(Rng& rng, std::size_t n, double lo = 0.3, double hi = 3.0);

// Tridiagonal with positive subdiagonal, a_i ~ Uniform(a_lo, a_hi),
// b_i ~ Uniform(b_lo, b_hi). Mixes TNN and non-TNN matrices.
LaxMatrix sample_positive_offdiagonal(Rng& rng, std::size_t n, double a_lo = -0.5, double a_hi = 3.0,
                                      double b_lo = 0.05, double b_hi = 2.0);

}  // namespace toda
