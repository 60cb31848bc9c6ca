#pragma once

#include <stdexcept>
#include <string>

namespace opsolve {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two series whose base exponents differ by a non-integer cannot share a grid.
class NonIntegerExponentGap : public Error {
public:
    using Error::Error;
};

// Evaluation requested outside the real domain z > 0.
class DomainError : public Error {
public:
    using Error::Error;
};

// The indicial equation has a negative discriminant.
class ComplexRootsUnsupported : public Error {
public:
    using Error::Error;
};

// A gamma-type function was evaluated at one of its poles.
class PoleError : public Error {
public:
    using Error::Error;
};

// Quadrature could not reach the requested tolerance.
class AccuracyError : public Error {
public:
    using Error::Error;
};

// Family or problem parameters outside their validity domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

} // namespace opsolve
