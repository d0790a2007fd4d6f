#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace toda {

// Base for every domain failure raised by the library. Callers that only care
// about "something went wrong numerically" can catch this one type.
class TodaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lax matrix outside the phase space (size < 2, wrong vector lengths, some b_i == 0).
class InvalidLaxMatrix : public TodaError {
public:
    using TodaError::TodaError;
};

class NonRealSpectrum : public TodaError {
public:
    using TodaError::TodaError;
};

class NonSimpleSpectrum : public TodaError {
public:
    using TodaError::TodaError;
};

class BadIndex : public TodaError {
public:
    using TodaError::TodaError;
};

class DegenerateComponent : public TodaError {
public:
    using TodaError::TodaError;
};

class TooLarge : public TodaError {
public:
    using TodaError::TodaError;
};

class NotTridiagonal : public TodaError {
public:
    using TodaError::TodaError;
};

class NotTnn : public TodaError {
public:
    using TodaError::TodaError;
};

class NonPositiveZ : public TodaError {
public:
    using TodaError::TodaError;
};

class ZeroCofactorValue : public TodaError {
public:
    ZeroCofactorValue(const std::string& what, int eigen_index)
        : TodaError(what), eigen_index_(eigen_index) {}
    int eigen_index() const noexcept { return eigen_index_; }

private:
    int eigen_index_;
};

class InvalidJacobiPoint : public TodaError {
public:
    using TodaError::TodaError;
};

// Some tau function vanishes; `index` is the tau index k in 1..n-1.
class NonGeneralDivisor : public TodaError {
public:
    NonGeneralDivisor(const std::string& what, int index) : TodaError(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

// Leading principal minor `k` (1-based size) is zero; no unit-lower/upper factorization.
class SingularLeadingMinor : public TodaError {
public:
    SingularLeadingMinor(const std::string& what, int k) : TodaError(what), k_(k) {}
    int k() const noexcept { return k_; }

private:
    int k_;
};

class Blowup : public TodaError {
public:
    Blowup(const std::string& what, double time, std::optional<int> tau_index)
        : TodaError(what), time_(time), tau_index_(tau_index) {}
    double time() const noexcept { return time_; }
    std::optional<int> tau_index() const noexcept { return tau_index_; }

private:
    double time_;
    std::optional<int> tau_index_;
};

class StructureLost : public TodaError {
public:
    using TodaError::TodaError;
};

// Numerical escape of the RK4 integrator (|b_n| above the overflow threshold).
class Overflow : public TodaError {
public:
    Overflow(const std::string& what, double time) : TodaError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace toda
