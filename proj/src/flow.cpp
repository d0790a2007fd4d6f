#include "toda/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "toda/errors.hpp"

namespace toda {

std::string to_string(SolverMethod m) {
    switch (m) {
        case SolverMethod::tau:
            return "tau";
        case SolverMethod::symes:
            return "symes";
        case SolverMethod::rk4:
            return "rk4";
    }
    return "unknown";
}

SolverMethod parse_method(const std::string& name) {
    if (name == "tau") return SolverMethod::tau;
    if (name == "symes") return SolverMethod::symes;
    if (name == "rk4") return SolverMethod::rk4;
    throw std::invalid_argument("unknown solver method '" + name + "'");
}

Matrix ScaledExponential::value() const { return std::exp(log_scale) * scaled; }

ScaledExponential matrix_exp_spectral(const LaxMatrix& l0, const Spectrum& spec, double t) {
    const std::size_t n = l0.size();
    if (spec.size() != n) throw std::invalid_argument("matrix_exp_spectral: spectrum size mismatch");
    const Matrix dense = l0.dense();
    const double shift = std::max(t * spec.min(), t * spec.max());

    ScaledExponential out{Matrix(n, n), shift};
    for (std::size_t i = 0; i < n; ++i) {
        Matrix projector = Matrix::identity(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Matrix factor = dense;
            for (std::size_t d = 0; d < n; ++d) factor(d, d) -= spec[j];
            projector = (1.0 / (spec[i] - spec[j])) * (projector * factor);
        }
        out.scaled = out.scaled + std::exp(t * spec[i] - shift) * projector;
    }
    return out;
}

ScaledExponential matrix_exp_spectral(const LaxMatrix& l0, double t) {
    return matrix_exp_spectral(l0, spectrum(l0), t);
}

UnitLowerUpper lu_unit_lower(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("lu_unit_lower: matrix not square");
    const std::size_t n = m.rows();
    const double tiny = 1e-14 * m.max_abs();
    UnitLowerUpper out{Matrix::identity(n), Matrix(n, n)};
    Matrix& lo = out.lower;
    Matrix& up = out.upper;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = k; j < n; ++j) {
            double s = m(k, j);
            for (std::size_t p = 0; p < k; ++p) s -= lo(k, p) * up(p, j);
            up(k, j) = s;
        }
        if (!(std::abs(up(k, k)) > tiny) || !std::isfinite(up(k, k)))
            throw SingularLeadingMinor("lu_unit_lower: leading principal minor " + std::to_string(k + 1) + " vanishes",
                                       static_cast<int>(k) + 1);
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = m(i, k);
            for (std::size_t p = 0; p < k; ++p) s -= lo(i, p) * up(p, k);
            lo(i, k) = s / up(k, k);
        }
    }
    return out;
}

namespace {

std::string time_text(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

}  // namespace

LaxMatrix solve_symes(const LaxMatrix& l0, double t) {
    const std::size_t n = l0.size();
    if (t == 0.0) return l0;
    const ScaledExponential e = matrix_exp_spectral(l0, t);
    UnitLowerUpper f;
    try {
        f = lu_unit_lower(e.scaled);
    } catch (const SingularLeadingMinor& err) {
        throw Blowup("solve_symes: no LU factorization at t=" + time_text(t) + " (" + err.what() + ")", t,
                     err.k());
    }
    // L(t) = N^{-1} (L0 N), N unit lower: forward substitution column by column.
    Matrix x = l0.dense() * f.lower;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = 0; p < i; ++p) x(i, j) -= f.lower(i, p) * x(p, j);

    std::vector<double> a(n), b(n - 1);
    for (std::size_t i = 0; i < n; ++i) a[i] = x(i, i);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(x(i, i + 1) - 1.0) > 1e-9)
            throw StructureLost("solve_symes: superdiagonal entry " + std::to_string(i + 1) + " drifted to " +
                                time_text(x(i, i + 1)));
        b[i] = x(i + 1, i);
    }
    if (std::any_of(b.begin(), b.end(), [](double v) { return v == 0.0 || !std::isfinite(v); }))
        throw Blowup("solve_symes: subdiagonal degenerated at t=" + time_text(t), t, std::nullopt);
    return LaxMatrix(std::move(a), std::move(b));
}

LaxMatrix solve_tau(const LaxMatrix& l0, double t) {
    if (t == 0.0) return l0;
    const Spectrum spec = spectrum(l0);
    const JacobiPoint f0 = abel_jacobi(l0, spec);
    try {
        return reconstruct(spec, evolve_point(f0, spec, t));
    } catch (const NonGeneralDivisor& err) {
        throw Blowup("solve_tau: tau_" + std::to_string(err.index()) + " vanishes at t=" + time_text(t), t,
                     err.index());
    }
}

namespace {

// y = (a_1..a_n, b_1..b_{n-1})
void vector_field(const std::vector<double>& y, std::size_t n, std::vector<double>& dy) {
    const double* a = y.data();
    const double* b = y.data() + n;
    double* da = dy.data();
    double* db = dy.data() + n;
    for (std::size_t i = 0; i < n; ++i) {
        const double right = (i + 1 < n) ? b[i] : 0.0;
        const double left = (i > 0) ? b[i - 1] : 0.0;
        da[i] = right - left;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) db[i] = b[i] * (a[i + 1] - a[i]);
}

void rk4_step(std::vector<double>& y, std::size_t n, double h, std::vector<double> (&k)[4], std::vector<double>& tmp) {
    const std::size_t m = y.size();
    vector_field(y, n, k[0]);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k[0][i];
    vector_field(tmp, n, k[1]);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + 0.5 * h * k[1][i];
    vector_field(tmp, n, k[2]);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] + h * k[2][i];
    vector_field(tmp, n, k[3]);
    for (std::size_t i = 0; i < m; ++i) y[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
}

}  // namespace

TodaVelocity toda_vector_field(const LaxMatrix& l) {
    const std::size_t n = l.size();
    std::vector<double> y(l.a());
    y.insert(y.end(), l.b().begin(), l.b().end());
    std::vector<double> dy(y.size());
    vector_field(y, n, dy);
    return {std::vector<double>(dy.begin(), dy.begin() + static_cast<std::ptrdiff_t>(n)),
            std::vector<double>(dy.begin() + static_cast<std::ptrdiff_t>(n), dy.end())};
}

LaxMatrix solve_rk4(const LaxMatrix& l0, double t, const Rk4Options& opts) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("solve_rk4: dt must be positive");
    const std::size_t n = l0.size();
    std::vector<double> y(l0.a());
    y.insert(y.end(), l0.b().begin(), l0.b().end());
    std::vector<double> k[4] = {std::vector<double>(y.size()), std::vector<double>(y.size()),
                                std::vector<double>(y.size()), std::vector<double>(y.size())};
    std::vector<double> tmp(y.size());

    const double span = std::abs(t);
    const double dir = t < 0 ? -1.0 : 1.0;
    const auto full_steps = static_cast<long long>(std::floor(span / opts.dt));
    const double remainder = span - static_cast<double>(full_steps) * opts.dt;

    auto check = [&](double elapsed) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            const bool bad = !std::isfinite(y[i]) || (i >= n && std::abs(y[i]) > opts.overflow_threshold);
            if (bad)
                throw Overflow("solve_rk4: numerical blowup at t=" + time_text(elapsed), elapsed);
        }
    };

    for (long long s = 0; s < full_steps; ++s) {
        rk4_step(y, n, dir * opts.dt, k, tmp);
        check(dir * static_cast<double>(s + 1) * opts.dt);
    }
    if (remainder > 0.0) {
        rk4_step(y, n, dir * remainder, k, tmp);
        check(t);
    }
    std::vector<double> a(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> b(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
    return LaxMatrix(std::move(a), std::move(b));
}

LaxMatrix solve_rk4(const LaxMatrix& l0, double t, double dt) { return solve_rk4(l0, t, Rk4Options{dt}); }

namespace {

std::vector<double> sample_times(double t0, double t1, double dt_out) {
    std::vector<double> times;
    const auto steps = static_cast<long long>(std::floor((t1 - t0) / dt_out + 1e-9));
    for (long long i = 0; i <= steps; ++i) times.push_back(t0 + static_cast<double>(i) * dt_out);
    if (t1 - times.back() > 1e-9 * dt_out)
        times.push_back(t1);
    else
        times.back() = t1;
    return times;
}

}  // namespace

Trajectory trajectory(const LaxMatrix& l0, double t0, double t1, double dt_out, SolverMethod method,
                      const TrajectoryOptions& opts) {
    if (!(t0 < t1)) throw std::invalid_argument("trajectory: need t0 < t1");
    if (!(dt_out > 0.0)) throw std::invalid_argument("trajectory: dt_out must be positive");
    Trajectory out;
    out.method = method;
    const std::vector<double> times = sample_times(t0, t1, dt_out);

    if (method == SolverMethod::rk4) {
        LaxMatrix state = l0;
        double now = t0;
        for (double s : times) {
            try {
                if (s > now) state = solve_rk4(state, s - now, Rk4Options{opts.rk4_dt});
            } catch (const Overflow& err) {
                out.blowup = now + err.time();
                break;
            }
            now = s;
            out.times.push_back(s);
            out.states.push_back(state);
        }
        return out;
    }

    const Spectrum spec = spectrum(l0);
    const JacobiPoint f0 = abel_jacobi(l0, spec);
    const BlowupScan scan = detect_blowup(spec, f0, 0.0, t1 - t0);
    if (scan.time) out.blowup = t0 + *scan.time;

    for (double s : times) {
        if (out.blowup && s >= *out.blowup - kBlowupTolerance) break;
        try {
            LaxMatrix state = s == t0                      ? l0
                              : method == SolverMethod::tau ? reconstruct(spec, evolve_point(f0, spec, s - t0))
                                                            : solve_symes(l0, s - t0);
            out.times.push_back(s);
            out.states.push_back(std::move(state));
        } catch (const NonGeneralDivisor&) {
            if (!out.blowup) out.blowup = s;
            break;
        } catch (const Blowup&) {
            if (!out.blowup) out.blowup = s;
            break;
        }
    }
    return out;
}

namespace {

// Signed relative tau values g_k = sign(tau_k) * generality_k for k = 1..n-1.
std::vector<double> relative_taus(const Spectrum& spec, const JacobiPoint& f0, double t) {
    const TauSequence ts = tau_sequence(spec, evolve_point(f0, spec, t));
    std::vector<double> g;
    for (std::size_t k = 1; k < spec.size(); ++k) g.push_back(ts.tau_log[k].sign * ts.generality[k]);
    return g;
}

}  // namespace

BlowupScan detect_blowup(const Spectrum& spec, const JacobiPoint& f0, double t0, double t1) {
    if (!(t0 < t1)) throw std::invalid_argument("detect_blowup: need t0 < t1");
    BlowupScan out;
    const int m = kBlowupGridIntervals;
    const double h = (t1 - t0) / m;
    auto grid = [&](int i) { return i == m ? t1 : t0 + i * h; };

    std::vector<std::vector<double>> g(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) g[static_cast<std::size_t>(i)] = relative_taus(spec, f0, grid(i));
    const std::size_t nk = g[0].size();

    for (int i = 0; i <= m && !out.time; ++i) {
        const auto& here = g[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < nk; ++k) {
            if (here[k] == 0.0) {
                out.time = grid(i);
                out.tau_index = static_cast<int>(k) + 1;
                break;
            }
        }
        if (out.time || i == m) break;
        const auto& next = g[static_cast<std::size_t>(i) + 1];
        for (std::size_t k = 0; k < nk; ++k) {
            if (next[k] == 0.0 || (here[k] > 0) == (next[k] > 0)) continue;
            double lo = grid(i), hi = grid(i + 1);
            const bool lo_positive = here[k] > 0;
            while (hi - lo > 0.1 * kBlowupTolerance) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double v = relative_taus(spec, f0, mid)[k];
                if (v == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((v > 0) == lo_positive)
                    lo = mid;
                else
                    hi = mid;
            }
            const double root = 0.5 * (lo + hi);
            if (!out.time || root < *out.time) {
                out.time = root;
                out.tau_index = static_cast<int>(k) + 1;
            }
        }
    }

    // Tangential touches: an interior local minimum of |g_k| that is nearly zero.
    const double last = out.time.value_or(t1);
    for (int i = 1; i < m && grid(i) < last; ++i) {
        for (std::size_t k = 0; k < nk; ++k) {
            const double c = std::abs(g[static_cast<std::size_t>(i)][k]);
            if (c < 1e-8 && c <= std::abs(g[static_cast<std::size_t>(i) - 1][k]) &&
                c <= std::abs(g[static_cast<std::size_t>(i) + 1][k])) {
                out.grid_miss = true;
                out.grid_miss_time = grid(i);
                return out;
            }
        }
    }
    return out;
}

}  // namespace toda
