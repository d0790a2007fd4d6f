#pragma once

// Randomized verification of the positive-cone characterization of TNN
// Lax matrices:
//
//   forward   a cone point over a positive spectrum reconstructs to a TNN matrix;
//   converse  a TNN matrix with positive simple spectrum linearizes into the cone;
//   patterns  a general point on any other sign component reconstructs to a
//             matrix that is not TNN.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toda/jacobi.hpp"
#include "toda/lax.hpp"
#include "toda/sampling.hpp"

namespace toda {

enum class Direction { forward, converse, both };

std::string to_string(Direction d);
Direction parse_direction(const std::string& name);

struct VerifyConfig {
    int n = 4;
    int samples = 1000;          // per selected direction
    int pattern_samples = 0;     // per non-alternating sign component
    std::uint64_t seed = 42;
    Direction direction = Direction::both;
    double tolerance = 1e-9;     // minors >= -tolerance count as nonnegative
    SamplingRanges ranges{};
    // < 0: TODA_WORKERS if set, otherwise hardware concurrency; 0 or 1: sequential.
    int workers = -1;
};

// Sample streams: forward, converse, then one per non-alternating component.
inline constexpr std::uint64_t kForwardStream = 0;
inline constexpr std::uint64_t kConverseStream = 1;
inline constexpr std::uint64_t kPatternStreamBase = 2;

struct FailureCase {
    std::string check;       // "forward", "converse" or "pattern:<signs>"
    std::uint64_t stream = 0;
    std::uint64_t index = 0;  // replay with sample_rng(seed, stream, index)
    std::string diagnostic;
    // Attached only when the report has at most kMaxDetailedFailures failures.
    std::optional<Spectrum> spectrum;
    std::optional<JacobiPoint> point;
    std::optional<LaxMatrix> matrix;
};

inline constexpr std::size_t kMaxDetailedFailures = 10;

struct CheckSummary {
    std::string check;
    int samples = 0;
    int failures = 0;
    int skipped = 0;  // non-general pattern samples
};

struct VerificationReport {
    int n = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    Direction direction = Direction::both;
    int samples = 0;   // forward + converse samples
    int failures = 0;  // == failure_cases.size()
    std::vector<CheckSummary> checks;
    std::vector<FailureCase> failure_cases;  // sorted by (stream, index)
};

// std::invalid_argument on n outside 2..8 or negative sample counts.
VerificationReport verify_theorem(const VerifyConfig& config);

// Outcome of a single sample; exposed for replay.
struct SampleOutcome {
    bool failed = false;
    bool skipped = false;
    std::string diagnostic;
    std::optional<Spectrum> spectrum;
    std::optional<JacobiPoint> point;
    std::optional<LaxMatrix> matrix;
};

SampleOutcome run_forward_sample(const VerifyConfig& config, std::uint64_t index);
SampleOutcome run_converse_sample(const VerifyConfig& config, std::uint64_t index);
SampleOutcome run_pattern_sample(const VerifyConfig& config, const SignComponent& component, std::uint64_t stream,
                                 std::uint64_t index);

int resolve_workers(int requested);

}  // namespace toda
