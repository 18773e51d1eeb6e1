#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bandext {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or input violates its documented precondition.
class InvalidParams : public Error {
public:
    using Error::Error;
};

/// The unregularized system is too ill-conditioned to solve in double precision.
class NearSingular : public Error {
public:
    NearSingular(double condition, double threshold);

    double condition() const noexcept { return condition_; }
    double threshold() const noexcept { return threshold_; }

private:
    double condition_;
    double threshold_;
};

/// Not enough knots for the requested interpolant.
class TooFewKnots : public Error {
public:
    TooFewKnots(std::size_t have, std::size_t need);
};

/// Both forecasts are identically zero, so the normalized discrepancy is undefined.
class BothZero : public Error {
public:
    BothZero() : Error("truncation discrepancy undefined: both forecasts are identically zero") {}
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

/// A Monte-Carlo trial failed; carries the trial id so the run can be replayed.
class TrialFailure : public Error {
public:
    TrialFailure(std::uint64_t trial_id, const std::string& what);

    std::uint64_t trial_id() const noexcept { return trial_id_; }

private:
    std::uint64_t trial_id_;
};

} // namespace bandext
