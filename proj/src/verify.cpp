#include "toda/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "toda/errors.hpp"
#include "toda/tnn.hpp"

namespace toda {

std::string to_string(Direction d) {
    switch (d) {
        case Direction::forward:
            return "forward";
        case Direction::converse:
            return "converse";
        case Direction::both:
            return "both";
    }
    return "unknown";
}

Direction parse_direction(const std::string& name) {
    if (name == "forward") return Direction::forward;
    if (name == "converse") return Direction::converse;
    if (name == "both") return Direction::both;
    throw std::invalid_argument("unknown direction '" + name + "'");
}

int resolve_workers(int requested) {
    if (requested >= 0) return requested;
    if (const char* env = std::getenv("TODA_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

constexpr double kConverseTimeSpan = 1.0;

std::string tnn_diagnostic(const TnnReport& r) {
    std::string s = "not TNN";
    if (r.witness) {
        s += ": minor rows [";
        for (std::size_t i = 0; i < r.witness->rows.size(); ++i) s += (i ? "," : "") + std::to_string(r.witness->rows[i] + 1);
        s += "] cols [";
        for (std::size_t i = 0; i < r.witness->cols.size(); ++i) s += (i ? "," : "") + std::to_string(r.witness->cols[i] + 1);
        s += "] = " + std::to_string(r.witness->value);
    }
    return s;
}

}  // namespace

SampleOutcome run_forward_sample(const VerifyConfig& config, std::uint64_t index) {
    SampleOutcome out;
    Rng rng = sample_rng(config.seed, kForwardStream, index);
    const auto n = static_cast<std::size_t>(config.n);
    try {
        out.spectrum = sample_spectrum(rng, n, config.ranges);
        out.point = sample_cone_point(rng, n, config.ranges);
        out.matrix = reconstruct(*out.spectrum, *out.point);
        const TnnReport r = is_tnn_tridiagonal(*out.matrix, config.tolerance);
        if (!r.is_tnn) {
            out.failed = true;
            out.diagnostic = "reconstruction " + tnn_diagnostic(r);
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.diagnostic = std::string("exception: ") + e.what();
    }
    return out;
}

SampleOutcome run_converse_sample(const VerifyConfig& config, std::uint64_t index) {
    SampleOutcome out;
    Rng rng = sample_rng(config.seed, kConverseStream, index);
    const auto n = static_cast<std::size_t>(config.n);
    try {
        if (index % 2 == 0) {
            // Forward construction, then a random time shift along the linear flow.
            const Spectrum spec = sample_spectrum(rng, n, config.ranges);
            const JacobiPoint f = sample_cone_point(rng, n, config.ranges);
            std::uniform_real_distribution<double> ut(-kConverseTimeSpan, kConverseTimeSpan);
            out.matrix = reconstruct(spec, evolve_point(f, spec, ut(rng)));
        } else {
            out.matrix = sample_tnn_lax(rng, n);
        }
        const TnnReport r = is_tnn_tridiagonal(*out.matrix, config.tolerance);
        if (!r.is_tnn) {
            out.failed = true;
            out.diagnostic = "sampled matrix " + tnn_diagnostic(r);
            return out;
        }
        out.spectrum = spectrum(*out.matrix);
        if (!out.spectrum->positive()) {
            out.failed = true;
            out.diagnostic = "TNN sample with non-positive spectrum";
            return out;
        }
        out.point = abel_jacobi(*out.matrix, *out.spectrum);
        const SignDiagnosis d = sign_component(*out.point);
        if (!d.in_positive_cone) {
            out.failed = true;
            out.diagnostic = "linearization on component " + d.component.to_string() + ", not the cone";
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.diagnostic = std::string("exception: ") + e.what();
    }
    return out;
}

SampleOutcome run_pattern_sample(const VerifyConfig& config, const SignComponent& component, std::uint64_t stream,
                                 std::uint64_t index) {
    SampleOutcome out;
    Rng rng = sample_rng(config.seed, stream, index);
    const auto n = static_cast<std::size_t>(config.n);
    try {
        out.spectrum = sample_spectrum(rng, n, config.ranges);
        out.point = sample_point(rng, component, config.ranges);
        if (!is_general_point(*out.spectrum, *out.point)) {
            out.skipped = true;
            return out;
        }
        out.matrix = reconstruct(*out.spectrum, *out.point);
        if (is_tnn_tridiagonal(*out.matrix, config.tolerance).is_tnn) {
            out.failed = true;
            out.diagnostic = "reconstruction off the cone is TNN";
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.diagnostic = std::string("exception: ") + e.what();
    }
    return out;
}

namespace {

struct Task {
    std::size_t check;  // index into the summaries
    std::uint64_t stream;
    std::uint64_t index;
};

}  // namespace

VerificationReport verify_theorem(const VerifyConfig& config) {
    if (config.n < 2 || config.n > 8) throw std::invalid_argument("verify_theorem: n must be in 2..8");
    if (config.samples < 0 || config.pattern_samples < 0)
        throw std::invalid_argument("verify_theorem: sample counts must be nonnegative");
    if (!(config.tolerance >= 0.0)) throw std::invalid_argument("verify_theorem: tolerance must be nonnegative");

    VerificationReport report;
    report.n = config.n;
    report.seed = config.seed;
    report.tolerance = config.tolerance;
    report.direction = config.direction;

    std::vector<Task> tasks;
    std::vector<SignComponent> patterns;
    auto add_check = [&](const std::string& name, std::uint64_t stream, int count) {
        report.checks.push_back(CheckSummary{name, count, 0, 0});
        for (int i = 0; i < count; ++i)
            tasks.push_back(Task{report.checks.size() - 1, stream, static_cast<std::uint64_t>(i)});
    };
    if (config.direction != Direction::converse) add_check("forward", kForwardStream, config.samples);
    if (config.direction != Direction::forward) add_check("converse", kConverseStream, config.samples);
    report.samples = 0;
    for (const auto& c : report.checks) report.samples += c.samples;

    const std::size_t first_pattern_check = report.checks.size();
    if (config.pattern_samples > 0) {
        const auto components = all_sign_components(static_cast<std::size_t>(config.n));
        for (std::size_t p = 1; p < components.size(); ++p) {
            patterns.push_back(components[p]);
            add_check("pattern:" + components[p].to_string(), kPatternStreamBase + (p - 1), config.pattern_samples);
        }
    }

    std::vector<SampleOutcome> outcomes(tasks.size());
    auto run = [&](std::size_t t) {
        const Task& task = tasks[t];
        if (task.stream == kForwardStream)
            outcomes[t] = run_forward_sample(config, task.index);
        else if (task.stream == kConverseStream)
            outcomes[t] = run_converse_sample(config, task.index);
        else
            outcomes[t] = run_pattern_sample(config, patterns[task.check - first_pattern_check], task.stream, task.index);
    };

    const int workers = std::min<int>(resolve_workers(config.workers), static_cast<int>(tasks.size()));
    if (workers <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < tasks.size(); t = next++) run(t);
            });
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        CheckSummary& summary = report.checks[tasks[t].check];
        SampleOutcome& o = outcomes[t];
        if (o.skipped) ++summary.skipped;
        if (!o.failed) continue;
        ++summary.failures;
        report.failure_cases.push_back(FailureCase{summary.check, tasks[t].stream, tasks[t].index, o.diagnostic,
                                                   std::move(o.spectrum), std::move(o.point), std::move(o.matrix)});
    }
    std::sort(report.failure_cases.begin(), report.failure_cases.end(), [](const FailureCase& x, const FailureCase& y) {
        return std::tie(x.stream, x.index) < std::tie(y.stream, y.index);
    });
    report.failures = static_cast<int>(report.failure_cases.size());
    if (report.failure_cases.size() > kMaxDetailedFailures) {
        for (auto& f : report.failure_cases) {
            f.spectrum.reset();
            f.point.reset();
            f.matrix.reset();
        }
    }
    return report;
}

}  // namespace toda
