#pragma once

#include <stdexcept>
#include <string>

namespace ael {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A strategy was evaluated outside [sigma_minus, sigma_plus].
class OutOfDomain : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The derivative of a supposedly concave objective changes sign more than
/// once. `smallest_root` holds the first stationary point that was located.
class NonConcave : public Error {
public:
    NonConcave(const std::string& what, double smallest_root, int sign_changes)
        : Error(what), smallest_root_(smallest_root), sign_changes_(sign_changes) {}

    double smallest_root() const noexcept { return smallest_root_; }
    int sign_changes() const noexcept { return sign_changes_; }

private:
    double smallest_root_;
    int sign_changes_;
};

/// No upper bracket with a negative payoff derivative was found.
class BracketFailure : public Error {
public:
    using Error::Error;
};

/// Operation called with a fee scheme it does not support.
class WrongScheme : public Error {
public:
    using Error::Error;
};

/// Operation requires sigma_minus < sigma_plus.
class DegenerateCase : public Error {
public:
    using Error::Error;
};

/// No Nash equilibrium exists or the solver failed to find one.
class NoEquilibrium : public Error {
public:
    using Error::Error;
};

}  // namespace ael
