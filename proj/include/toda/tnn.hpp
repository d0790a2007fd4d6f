#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toda/lax.hpp"
#include "toda/matrix.hpp"

namespace toda {

inline constexpr std::size_t kMaxExhaustiveSize = 8;

enum class TnnMethod { exhaustive, tridiagonal_criterion, interlacing };

std::string to_string(TnnMethod m);

// A negative minor. Index lists are 0-based here; serialization emits them 1-based.
struct MinorWitness {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    double value = 0.0;
};

struct TnnReport {
    bool is_tnn = true;
    std::optional<MinorWitness> witness;
    TnnMethod method = TnnMethod::exhaustive;
};

// Every minor >= -tol. Minors are visited by increasing size, then
// lexicographically by rows and columns; the first negative one is the witness.
// TooLarge above 8x8.
TnnReport is_tnn_exhaustive(const Matrix& m, double tol = 0.0);

// Contiguous principal minors >= -tol and off-diagonal entries >= -tol.
// NotTridiagonal if anything outside the three bands is nonzero.
TnnReport is_tnn_tridiagonal(const Matrix& m, double tol = 0.0);
TnnReport is_tnn_tridiagonal(const LaxMatrix& l, double tol = 0.0);

// Every minor > 0. TooLarge above 8x8.
bool is_totally_positive(const Matrix& m);

struct IrreducibilityResult {
    bool irreducible = false;
    std::optional<int> power;  // smallest k <= k_max with L^k totally positive
    int k_max = 0;
};

// Searches L, L^2, ..., L^k_max for a totally positive power. k_max <= 0
// means the default 2n. NotTnn if L fails the tridiagonal TNN criterion.
// A miss reports irreducible = false for this bound only.
IrreducibilityResult is_irreducible_tnn(const Matrix& l, int k_max = 0);
IrreducibilityResult is_irreducible_tnn(const LaxMatrix& l, int k_max = 0);

struct InterlacingData {
    Spectrum lambdas;
    std::vector<double> mus;        // spectrum of rows/cols 2..N
    std::vector<double> mus_prime;  // spectrum of rows/cols 1..N-1
};

InterlacingData interlacing_spectra(const LaxMatrix& l, const SpectrumOptions& opts = {});

// 0 < lambda_1 < mu_1 < lambda_2 < ... < mu_{N-1} < lambda_N, strictly.
bool strictly_interlaces(const std::vector<double>& lambdas, const std::vector<double>& mus);

// The chain above for the trailing block spectrum.
bool check_interlacing(const InterlacingData& data);

// TNN decision via interlacing (valid for positive off-diagonals only; a
// non-positive off-diagonal is reported as not TNN).
TnnReport is_tnn_interlacing(const LaxMatrix& l);

}  // namespace toda
