// errors.hpp — Exception hierarchy shared by every dephasim module

#pragma once

#include <stdexcept>
#include <string>

namespace dephasim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a documented domain invariant (p outside [0,1], |v|^2 > p(1-p), ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Caller broke an operation precondition (negative time, unordered grid, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Non-finite result, eigen-solver failure or an internal consistency check tripping.
class NumericalError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : NumericalError(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

class FitError : public Error {
public:
    using Error::Error;
};

} // namespace dephasim
