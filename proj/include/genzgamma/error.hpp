#pragma once

#include <stdexcept>
#include <string>

namespace genzgamma {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested function
/// (t <= 0, q outside (0,1), p < 1, violated hypothesis, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A truncated series could not reach the requested tail tolerance
/// within the term cap.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Two algebraically identical evaluation routes disagree by more than
/// their combined error bounds.
class InconsistentForms : public Error {
public:
    using Error::Error;
};

}  // namespace genzgamma
