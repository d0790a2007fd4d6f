#pragma once

// Time evolution of the finite Toda lattice dL/dt = [L, L_-] by three
// independent routes:
//
//   symes  factor exp(t L0) = N R (N unit lower, R upper) and conjugate,
//          L(t) = N^{-1} L0 N;
//   tau    closed form through the Jacobi variety: reconstruct the evolved
//          point evolve_point(abel_jacobi(L0), t);
//   rk4    classical fixed-step Runge-Kutta on (a, b).
//
// All solvers take the elapsed time t measured from the state L0.

#include <optional>
#include <string>
#include <vector>

#include "toda/jacobi.hpp"
#include "toda/lax.hpp"
#include "toda/matrix.hpp"

namespace toda {

enum class SolverMethod { tau, symes, rk4 };

std::string to_string(SolverMethod m);
// std::invalid_argument on an unknown name.
SolverMethod parse_method(const std::string& name);

// exp(t L0) = exp(log_scale) * scaled.
struct ScaledExponential {
    Matrix scaled;
    double log_scale = 0.0;

    Matrix value() const;
};

// Lagrange interpolation on the eigenvalues:
//   sum_i e^{t lambda_i} prod_{j != i} (L0 - lambda_j E) / (lambda_i - lambda_j),
// with every exponent shifted by max_i t lambda_i.
ScaledExponential matrix_exp_spectral(const LaxMatrix& l0, const Spectrum& spec, double t);
ScaledExponential matrix_exp_spectral(const LaxMatrix& l0, double t);

struct UnitLowerUpper {
    Matrix lower;  // unit lower triangular
    Matrix upper;  // upper triangular
};

// Doolittle without pivoting. SingularLeadingMinor(k) when the k-th pivot
// vanishes (|pivot| <= 1e-14 max|M|).
UnitLowerUpper lu_unit_lower(const Matrix& m);

// Blowup(t) if the factorization does not exist at t; StructureLost if the
// conjugated matrix loses its unit superdiagonal (beyond 1e-9).
LaxMatrix solve_symes(const LaxMatrix& l0, double t);

// Blowup(t, k) if the evolved point is not general.
LaxMatrix solve_tau(const LaxMatrix& l0, double t);

struct TodaVelocity {
    std::vector<double> a_dot;
    std::vector<double> b_dot;
};

// Entries of [L, L_-]: a_i' = b_i - b_{i-1}, b_i' = b_i (a_{i+1} - a_i).
TodaVelocity toda_vector_field(const LaxMatrix& l);

struct Rk4Options {
    double dt = 1e-3;
    double overflow_threshold = 1e12;
};

// floor(|t|/dt) full steps plus one partial step; negative t integrates
// backwards. Overflow(time) as soon as some |b_n| exceeds the threshold or a
// coordinate stops being finite; `time` is the elapsed time of that step.
LaxMatrix solve_rk4(const LaxMatrix& l0, double t, const Rk4Options& opts);
LaxMatrix solve_rk4(const LaxMatrix& l0, double t, double dt);

struct Trajectory {
    std::vector<double> times;
    std::vector<LaxMatrix> states;
    SolverMethod method = SolverMethod::tau;
    std::optional<double> blowup;  // states end strictly before this time
};

struct TrajectoryOptions {
    double rk4_dt = 1e-3;
};

// Samples t0, t0 + dt_out, ... and always t1; L0 is the state at t0. For the
// closed-form methods the window is scanned with detect_blowup first.
Trajectory trajectory(const LaxMatrix& l0, double t0, double t1, double dt_out, SolverMethod method,
                      const TrajectoryOptions& opts = {});

struct BlowupScan {
    std::optional<double> time;
    std::optional<int> tau_index;
    // Some tau_k nearly touches zero between grid points without a sign change.
    bool grid_miss = false;
    std::optional<double> grid_miss_time;
};

inline constexpr int kBlowupGridIntervals = 1000;
inline constexpr double kBlowupTolerance = 1e-9;

// Earliest zero in [t0, t1] of any tau_k(evolve_point(f0, spec, t)), 1 <= k <= n-1:
// sign changes on a 1000-interval grid, refined by bisection to 1e-9.
BlowupScan detect_blowup(const Spectrum& spec, const JacobiPoint& f0, double t0, double t1);

}  // namespace toda
