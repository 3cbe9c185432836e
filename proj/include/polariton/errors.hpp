#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polariton {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or unparsable configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A denominator in a closed-form expression vanished.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// A solver guard (aliasing, boundary mass, ...) was violated. `guard()` names it.
class GuardFailure : public Error {
public:
    GuardFailure(std::string guard, const std::string& what)
        : Error(guard + ": " + what), guard_(std::move(guard)) {}
    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

/// NaN/overflow or a failed integration.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class IntegrationError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class FitError : public Error {
public:
    using Error::Error;
};

}  // namespace polariton
