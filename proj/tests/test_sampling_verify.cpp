#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "toda/errors.hpp"
#include "toda/serialization.hpp"
#include "toda/sampling.hpp"
#include "toda/tnn.hpp"
#include "toda/verify.hpp"

using namespace toda;

TEST(Sampling, RngIsKeyedBySeedStreamAndIndex) {
    Rng a = sample_rng(42, 0, 7);
    Rng b = sample_rng(42, 0, 7);
    EXPECT_EQ(a(), b());
    EXPECT_NE(sample_rng(42, 0, 7)(), sample_rng(42, 1, 7)());
    EXPECT_NE(sample_rng(42, 0, 7)(), sample_rng(42, 0, 8)());
    EXPECT_NE(sample_rng(42, 0, 7)(), sample_rng(43, 0, 7)());
}

TEST(Sampling, SpectrumRespectsRangeAndGap) {
    const SamplingRanges r;
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng rng = sample_rng(1, 0, i);
        const Spectrum s = sample_spectrum(rng, 2 + i % 7, r);
        EXPECT_GT(s.min(), r.lambda_min);
        EXPECT_LT(s.max(), r.lambda_max);
        for (std::size_t k = 1; k < s.size(); ++k) EXPECT_GE(s[k] - s[k - 1], r.min_gap);
    }
}

TEST(Sampling, ConePointsAlternate) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = sample_rng(2, 0, i);
        const JacobiPoint f = sample_cone_point(rng, 2 + i % 7);
        EXPECT_EQ(f[0], 1.0);
        for (std::size_t k = 1; k < f.size(); ++k) {
            EXPECT_GT((k % 2 == 0 ? 1.0 : -1.0) * f[k], 0.0);
            EXPECT_LE(std::abs(std::log(std::abs(f[k]))), 3.0);
        }
        EXPECT_TRUE(sign_component(f).in_positive_cone);
    }
}

TEST(Sampling, PointFollowsRequestedComponent) {
    for (const SignComponent& c : all_sign_components(4)) {
        Rng rng = sample_rng(3, 0, 0);
        EXPECT_EQ(sign_component(sample_point(rng, c)).component, c);
    }
}

TEST(Sampling, BidiagonalGeneratorIsTnn) {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(4, 0, i);
        const LaxMatrix l = sample_tnn_lax(rng, 2 + i % 7);
        EXPECT_TRUE(l.positive_offdiagonal());
        EXPECT_TRUE(is_tnn_tridiagonal(l).is_tnn) << "sample " << i;
    }
}

TEST(Verify, SmallConfigurationsPass) {
    for (Direction d : {Direction::forward, Direction::converse, Direction::both}) {
        VerifyConfig c;
        c.n = 2;
        c.samples = 10;
        c.seed = 1;
        c.direction = d;
        c.workers = 0;
        const VerificationReport r = verify_theorem(c);
        EXPECT_EQ(r.failures, 0);
        EXPECT_EQ(r.samples, d == Direction::both ? 20 : 10);
    }
}

TEST(Verify, PatternsAreNotTnn) {
    VerifyConfig c;
    c.n = 4;
    c.samples = 50;
    c.pattern_samples = 50;
    c.workers = 0;
    const VerificationReport r = verify_theorem(c);
    EXPECT_EQ(r.failures, 0);
    // forward, converse and the seven non-alternating components for n = 4
    EXPECT_EQ(r.checks.size(), 9u);
    EXPECT_EQ(r.samples, 100);
}

TEST(Verify, ZeroSamples) {
    VerifyConfig c;
    c.samples = 0;
    const VerificationReport r = verify_theorem(c);
    EXPECT_EQ(r.samples, 0);
    EXPECT_EQ(r.failures, 0);
}

TEST(Verify, RejectsBadConfiguration) {
    VerifyConfig c;
    c.n = 1;
    EXPECT_THROW(verify_theorem(c), std::invalid_argument);
    c.n = 9;
    EXPECT_THROW(verify_theorem(c), std::invalid_argument);
    c.n = 3;
    c.samples = -1;
    EXPECT_THROW(verify_theorem(c), std::invalid_argument);
    EXPECT_THROW(parse_direction("sideways"), std::invalid_argument);
}

TEST(Verify, ResultIndependentOfWorkerCount) {
    VerifyConfig c;
    c.n = 5;
    c.samples = 200;
    c.pattern_samples = 10;
    c.seed = 99;
    c.workers = 0;
    const Json sequential = to_json(verify_theorem(c));
    c.workers = 3;
    EXPECT_EQ(to_json(verify_theorem(c)), sequential);
}

TEST(Verify, NegativeToleranceRejected) {
    VerifyConfig c;
    c.n = 3;
    c.samples = 20;
    c.tolerance = -1.0;
    EXPECT_THROW(verify_theorem(c), std::invalid_argument);
}

TEST(Verify, ReplayMatchesReport) {
    VerifyConfig c;
    c.n = 3;
    c.samples = 5;
    const SampleOutcome o1 = run_forward_sample(c, 3);
    const SampleOutcome o2 = run_forward_sample(c, 3);
    EXPECT_EQ(o1.failed, o2.failed);
    ASSERT_TRUE(o1.spectrum && o2.spectrum);
    EXPECT_EQ(o1.spectrum->values(), o2.spectrum->values());
    EXPECT_EQ(o1.point->f(), o2.point->f());
}

TEST(Serialization, LaxRoundTrip) {
    const LaxMatrix l({1.5, -2, 3}, {0.25, 4});
    const Json j = to_json(l);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(lax_from_json(j), l);
    EXPECT_THROW(lax_from_json(Json{{"n", 2}, {"a", {1, 2, 3}}, {"b", {1, 1}}}), std::exception);
    EXPECT_EQ(lax_from_json(Json::parse(R"({"a":[2,2],"b":[1]})")), LaxMatrix({2, 2}, {1}));
}

TEST(Serialization, DenseMatrixInput) {
    const Matrix m = matrix_from_json(Json::parse(R"({"matrix":[[1,2],[3,4]]})"));
    EXPECT_EQ(m(1, 0), 3.0);
    EXPECT_EQ(matrix_from_json(to_json(LaxMatrix({2, 2}, {1}))), (Matrix{{2, 1}, {1, 2}}));
}

TEST(Serialization, PointAndSpectrum) {
    const JacobiPoint p = point_from_json(Json::parse(R"({"f":[2,-2]})"));
    EXPECT_EQ(p.f(), (std::vector<double>{1, -1}));
    EXPECT_EQ(point_from_json(Json::parse("[1,-0.5]")).f(), (std::vector<double>{1, -0.5}));
    EXPECT_EQ(to_json(p)["f"], Json::parse("[1.0,-1.0]"));

    const Spectrum s = spectrum_from_json(Json::parse(R"({"lambdas":[1,3]})"));
    EXPECT_EQ(s.values(), (std::vector<double>{1, 3}));
    // Point coordinates follow the eigenvalue order, so an unsorted spectrum is rejected.
    EXPECT_THROW(spectrum_from_json(Json::parse("[3,1]")), NonSimpleSpectrum);
    EXPECT_EQ(spectrum_from_json(to_json(s)).values(), s.values());
}

TEST(Serialization, TnnWitnessIsOneBased) {
    const Json j = to_json(is_tnn_exhaustive(Matrix{{0, 1}, {1, 0}}));
    EXPECT_EQ(j["is_tnn"], false);
    EXPECT_EQ(j["witness"]["rows"], Json::parse("[1,2]"));
    EXPECT_EQ(j["witness"]["cols"], Json::parse("[1,2]"));
    EXPECT_EQ(j["witness"]["value"], -1.0);
    EXPECT_TRUE(to_json(is_tnn_exhaustive(Matrix{{2, 1}, {1, 2}}))["witness"].is_null());
}

TEST(Serialization, TrajectoryCsv) {
    const Trajectory t = trajectory(LaxMatrix({2, 2}, {1}), 0.0, 0.2, 0.1, SolverMethod::tau);
    std::ostringstream os;
    write_trajectory_csv(os, t);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "t,a1,a2,b1");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 3);

    const LaxMatrix l0 = reconstruct(Spectrum({1, 3}), evolve_point(JacobiPoint::from_raw(std::vector<double>{1, 1}),
                                                                      Spectrum({1, 3}), -1.0));
    const Trajectory cut = trajectory(l0, -1.0, 1.0, 0.1, SolverMethod::tau);
    std::ostringstream os2;
    write_trajectory_csv(os2, cut);
    EXPECT_NE(os2.str().find("# blowup t=0.000000"), std::string::npos);
    const Json j = to_json(cut);
    EXPECT_NEAR(j["blowup"].get<double>(), 0.0, 1e-6);
}

TEST(Serialization, ReportShape) {
    VerifyConfig c;
    c.n = 2;
    c.samples = 3;
    c.seed = 5;
    const Json j = to_json(verify_theorem(c));
    EXPECT_EQ(j["config"]["n"], 2);
    EXPECT_EQ(j["config"]["seed"], 5);
    EXPECT_EQ(j["config"]["direction"], "both");
    EXPECT_EQ(j["samples"], 6);
    EXPECT_EQ(j["failures"], 0);
    EXPECT_TRUE(j["failure_cases"].is_array());
}
