#pragma once

#include <stdexcept>
#include <string>

namespace predpower {

/// A precondition on an input value was violated.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A transform's derivative could not be evaluated at an interior point.
class NonDifferentiableError : public std::domain_error {
public:
    NonDifferentiableError(const std::string& transform, double p);

    double point() const noexcept { return point_; }

private:
    double point_;
};

/// The distinguishability integral of an uncertainty law does not converge.
class DivergentIntegralError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A predicted probability fell outside [0,1] and clamping was not requested.
class OutOfModelError : public std::range_error {
public:
    explicit OutOfModelError(double raw);

    double raw_value() const noexcept { return raw_; }

private:
    double raw_;
};

/// Measured data cannot be produced by the superposition rule for any phase.
class InconsistentDataError : public std::domain_error {
public:
    explicit InconsistentDataError(double cosine);

    double cosine() const noexcept { return cosine_; }

private:
    double cosine_;
};

}  // namespace predpower
