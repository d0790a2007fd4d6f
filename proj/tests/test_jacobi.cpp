#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/jacobi.hpp"
#include "toda/sampling.hpp"
#include "toda/tnn.hpp"

using namespace toda;

namespace {

JacobiPoint point(std::vector<double> f) { return JacobiPoint::from_raw(f); }

const Spectrum kSpec13({1, 3});

}  // namespace

TEST(JacobiPoint, NormalizesByFirstEntry) {
    const JacobiPoint p = point({-2, 4, -6});
    EXPECT_EQ(p.f(), (std::vector<double>{1, -2, 3}));
    EXPECT_EQ(point({3, -3}), point({1, -1}));
    EXPECT_THROW(point({1, 0}), InvalidJacobiPoint);
    EXPECT_THROW(point({}), InvalidJacobiPoint);
}

TEST(Theta, Examples) {
    EXPECT_NEAR(theta(1, std::vector<double>{1, 1}, Spectrum({0.5, 7})), 0.0, 1e-15);
    EXPECT_NEAR(theta(0, std::vector<double>{1, 1}, kSpec13), 2.0, 1e-15);
    EXPECT_NEAR(theta(1, std::vector<double>{1, 4}, kSpec13), 1.5, 1e-15);
    EXPECT_THROW(theta(1, std::vector<double>{1, -4}, kSpec13), NonPositiveZ);
    EXPECT_THROW(theta(3, std::vector<double>{1, 4}, kSpec13), BadIndex);
}

TEST(TauSequence, CalibratedSignsAtCone) {
    // Every tau is positive on the cone; tau'_k is the time derivative of tau_k.
    const TauSequence t1 = tau_sequence(kSpec13, point({1, -1}));
    EXPECT_NEAR(t1.tau[0], 2, 1e-14);
    EXPECT_NEAR(t1.tau[1], 2, 1e-14);
    EXPECT_NEAR(t1.tau[2], 2, 1e-14);
    EXPECT_EQ(t1.tau_prime[0], 0.0);
    EXPECT_NEAR(t1.tau_prime[1], 4, 1e-14);
    EXPECT_NEAR(t1.tau_prime[2], 8, 1e-14);

    const TauSequence t2 = tau_sequence(kSpec13, point({1, -2}));
    EXPECT_NEAR(t2.tau[1], 3, 1e-14);
    EXPECT_NEAR(t2.tau[2], 4, 1e-14);
    EXPECT_NEAR(t2.tau_prime[1], 7, 1e-14);
    EXPECT_NEAR(t2.tau_prime[2], 16, 1e-14);
}

TEST(TauSequence, NonGeneralAndVandermonde) {
    const TauSequence t = tau_sequence(kSpec13, point({1, 1}));
    EXPECT_EQ(t.tau[1], 0.0);
    EXPECT_EQ(t.generality[1], 0.0);
    const Spectrum s({0.3, 1.1, 2.0, 5.5});
    EXPECT_NEAR(tau_sequence(s, point({1, 2, -3, 0.5})).tau[0], s.vandermonde(), 1e-12 * s.vandermonde());
}

TEST(TauSequence, MatchesCofactorOracleUpToCalibratedSign) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = sample_rng(41, 0, i);
        const std::size_t n = 2 + i % 5;
        const Spectrum spec = sample_spectrum(rng, n, SamplingRanges{0.2, 3.0, 0.05, 1.0});
        std::vector<double> f(n);
        std::uniform_real_distribution<double> u(-2, 2);
        for (double& v : f) v = u(rng);
        f[0] = 1.0;
        const TauSequence ts = tau_sequence(spec, f);
        for (int k = 0; k <= static_cast<int>(n); ++k) {
            const double eps = tau_sign(static_cast<int>(n), k);
            const double raw = oracle::raw_tau(spec.values(), f, k, false);
            EXPECT_NEAR(ts.tau[static_cast<std::size_t>(k)], eps * raw, 1e-9 * std::max(1.0, std::abs(raw)));
            if (k == 0) continue;
            const double rawp = oracle::raw_tau(spec.values(), f, k, true);
            EXPECT_NEAR(ts.tau_prime[static_cast<std::size_t>(k)], eps * rawp, 1e-9 * std::max(1.0, std::abs(rawp)));
        }
    }
}

TEST(TauSequence, PositiveOnTheCone) {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(43, 0, i);
        const std::size_t n = 2 + i % 7;
        const Spectrum spec = sample_spectrum(rng, n);
        const TauSequence ts = tau_sequence(spec, sample_cone_point(rng, n));
        for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(ts.tau_log[k].sign, 1) << "n=" << n << " k=" << k;
    }
}

TEST(TauSequence, TauPrimeIsTimeDerivative) {
    Rng rng = sample_rng(47, 0, 0);
    const Spectrum spec = sample_spectrum(rng, 4, SamplingRanges{0.2, 3.0, 0.1, 1.0});
    const JacobiPoint f0 = sample_cone_point(rng, 4);
    // Unnormalized evolution e^{t lambda_i} f_i so that the derivative is exact.
    auto tau_at = [&](double t) {
        std::vector<double> f(4);
        for (std::size_t i = 0; i < 4; ++i) f[i] = std::exp(t * spec[i]) * f0[i];
        return tau_sequence(spec, f);
    };
    const double h = 1e-5;
    const TauSequence mid = tau_at(0.0), plus = tau_at(h), minus = tau_at(-h);
    for (std::size_t k = 1; k <= 4; ++k) {
        const double fd = (plus.tau[k] - minus.tau[k]) / (2 * h);
        EXPECT_NEAR(mid.tau_prime[k], fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST(TauSequence, ThetaConsistency) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = sample_rng(53, 0, i);
        const std::size_t n = 2 + i % 5;
        const Spectrum spec = sample_spectrum(rng, n);
        std::uniform_real_distribution<double> u(-2, 2);
        std::vector<double> z(n);
        double root = 1.0;
        for (double& v : z) {
            v = std::exp(u(rng));
            root *= std::sqrt(v);
        }
        const TauSequence ts = tau_sequence(spec, z);
        for (int k = 0; k <= static_cast<int>(n); ++k) {
            const double lhs = theta(k, z, spec) * root;
            const double rhs = tau_sign(static_cast<int>(n), k) * ts.tau[static_cast<std::size_t>(k)];
            EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs) + 1e-300);
        }
    }
}

TEST(AbelJacobi, Examples) {
    const JacobiPoint p2 = abel_jacobi(LaxMatrix({2, 2}, {1}));
    EXPECT_NEAR(p2[1], -1.0, 1e-14);
    const JacobiPoint p3 = abel_jacobi(LaxMatrix({2, 2, 2}, {1, 1}));
    EXPECT_NEAR(p3[1], -1.0, 1e-13);
    EXPECT_NEAR(p3[2], 1.0, 1e-13);
}

TEST(AbelJacobi, GenericTwoByTwo) {
    // L = [[p,1],[r,q]]: F = (q - lambda_1, q - lambda_2), f_2 = -r / (q - lambda_1)^2.
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = sample_rng(59, 0, i);
        std::uniform_real_distribution<double> u(-3, 3), ur(0.05, 4);
        const double p = u(rng), q = u(rng), r = ur(rng);
        const LaxMatrix l({p, q}, {r});
        const Spectrum s = spectrum(l);
        const JacobiPoint f = abel_jacobi(l, s);
        const double expected = -r / ((q - s[0]) * (q - s[0]));
        EXPECT_NEAR(f[1], expected, 1e-9 * std::abs(expected));
        EXPECT_TRUE(sign_component(f).in_positive_cone);
    }
}

TEST(AbelJacobi, ZeroCofactorValue) {
    // Delta_11 cannot vanish on the spectrum while b != 0, but with b_1 = 1e-30 the
    // eigenvalue near 2 is numerically a root of Delta_11 = 2 - lambda.
    try {
        abel_jacobi(LaxMatrix({1, 2}, {1e-30}));
        FAIL() << "expected ZeroCofactorValue";
    } catch (const ZeroCofactorValue& e) {
        EXPECT_EQ(e.eigen_index(), 2);
    }
}

TEST(Reconstruct, Examples) {
    const LaxMatrix l1 = reconstruct(kSpec13, point({1, -1}));
    EXPECT_NEAR(l1.a()[0], 2, 1e-14);
    EXPECT_NEAR(l1.a()[1], 2, 1e-14);
    EXPECT_NEAR(l1.b()[0], 1, 1e-14);

    const LaxMatrix l2 = reconstruct(kSpec13, point({1, -2}));
    EXPECT_NEAR(l2.a()[0], 7.0 / 3, 1e-14);
    EXPECT_NEAR(l2.a()[1], 5.0 / 3, 1e-14);
    EXPECT_NEAR(l2.b()[0], 8.0 / 9, 1e-14);

    try {
        reconstruct(kSpec13, point({1, 1}));
        FAIL() << "expected NonGeneralDivisor";
    } catch (const NonGeneralDivisor& e) {
        EXPECT_EQ(e.index(), 1);
    }
}

TEST(Reconstruct, MatchesClosedFormTwoByTwo) {
    for (double t : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
        const JacobiPoint f = evolve_point(point({1, -1}), kSpec13, t);
        const LaxMatrix l = reconstruct(kSpec13, f);
        EXPECT_NEAR(l.b()[0], oracle::n2_b1(t), 1e-12);
        EXPECT_NEAR(l.a()[0], oracle::n2_a1(t), 1e-12);
        EXPECT_NEAR(l.a()[1], 4.0 - oracle::n2_a1(t), 1e-12);
    }
}

TEST(Reconstruct, PreservesSpectrumAndRoundTrips) {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(61, 0, i);
        const std::size_t n = 2 + i % 5;
        const Spectrum spec = sample_spectrum(rng, n);
        const JacobiPoint f = sample_cone_point(rng, n);
        const LaxMatrix l = reconstruct(spec, f);
        const Spectrum back = spectrum(l);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(back[k], spec[k], 1e-8 * std::max(1.0, spec[k]));
        EXPECT_LE(relative_distance(abel_jacobi(l, back), f), 1e-8);
    }
}

TEST(Reconstruct, InvertsLinearizationOnTnnMatrices) {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(67, 0, i);
        const LaxMatrix l = sample_tnn_lax(rng, 2 + i % 5);
        const Spectrum spec = spectrum(l);
        const LaxMatrix back = reconstruct(spec, abel_jacobi(l, spec));
        for (std::size_t k = 0; k < l.size(); ++k) EXPECT_NEAR(back.a()[k], l.a()[k], 1e-8 * std::max(1.0, std::abs(l.a()[k])));
        for (std::size_t k = 0; k + 1 < l.size(); ++k) EXPECT_NEAR(back.b()[k], l.b()[k], 1e-8 * std::max(1.0, l.b()[k]));
    }
}

TEST(EvolvePoint, Examples) {
    EXPECT_EQ(evolve_point(point({1, -1}), kSpec13, 0.0), point({1, -1}));
    const JacobiPoint p = evolve_point(point({1, -1}), kSpec13, std::log(2.0) / 2);
    EXPECT_NEAR(p[1], -2.0, 1e-14);
}

TEST(EvolvePoint, GroupLawAndLargeTimes) {
    const Spectrum spec({0.5, 1.5, 4.0});
    const JacobiPoint f = point({1, -0.3, 2.0});
    const JacobiPoint a = evolve_point(evolve_point(f, spec, 1.25), spec, -0.5);
    const JacobiPoint b = evolve_point(f, spec, 0.75);
    EXPECT_LE(relative_distance(a, b), 1e-13);
    const JacobiPoint far = evolve_point(f, spec, 150.0);
    for (double v : far.f()) EXPECT_TRUE(std::isfinite(v));
}

TEST(SignComponent, Examples) {
    const SignDiagnosis d1 = sign_component(point({1, -1}));
    EXPECT_EQ(d1.component.signs, std::vector<int>{-1});
    EXPECT_TRUE(d1.in_positive_cone);
    const SignDiagnosis d2 = sign_component(point({1, -1, 1}));
    EXPECT_EQ(d2.component.signs, (std::vector<int>{-1, 1}));
    EXPECT_TRUE(d2.in_positive_cone);
    const SignDiagnosis d3 = sign_component(point({1, 1}));
    EXPECT_EQ(d3.component.signs, std::vector<int>{1});
    EXPECT_FALSE(d3.in_positive_cone);
    EXPECT_EQ(d2.component.to_string(), "-+");
}

TEST(SignComponent, Enumeration) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto all = all_sign_components(n);
        EXPECT_EQ(all.size(), std::size_t{1} << (n - 1));
        EXPECT_TRUE(all.front().alternating());
        for (std::size_t i = 1; i < all.size(); ++i) EXPECT_FALSE(all[i].alternating());
    }
}

TEST(GeneralPoint, Examples) {
    EXPECT_TRUE(is_general_point(kSpec13, point({1, -1})));
    EXPECT_FALSE(is_general_point(kSpec13, point({1, 1})));
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = sample_rng(71, 0, i);
        const std::size_t n = 2 + i % 7;
        const Spectrum spec = sample_spectrum(rng, n);
        EXPECT_TRUE(is_general_point(spec, sample_cone_point(rng, n)));
    }
}

TEST(Properties, ChopIntegralRootsInterlaceSpectrum) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = sample_rng(73, 0, i);
        const LaxMatrix l = sample_tnn_lax(rng, 2 + i % 5);
        const Spectrum spec = spectrum(l);
        const auto roots = polynomial_roots(chop_integral(l));
        for (std::size_t k = 0; k < roots.size(); ++k) {
            EXPECT_LT(spec[k], roots[k].real());
            EXPECT_LT(roots[k].real(), spec[k + 1]);
        }
    }
}

TEST(Properties, ForwardTheoremSmallSample) {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(79, 0, i);
        const std::size_t n = 2 + i % 5;
        const Spectrum spec = sample_spectrum(rng, n);
        const LaxMatrix l = reconstruct(spec, sample_cone_point(rng, n));
        EXPECT_TRUE(is_tnn_tridiagonal(l, 1e-9).is_tnn);
        if (n <= 4) EXPECT_GE(oracle::min_minor(oracle::tridiagonal(l.a(), l.b())), -1e-9);
    }
}
