#pragma once

#include <stdexcept>
#include <string>

namespace neron {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input or an argument outside the documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A caller-side precondition does not hold (e.g. eigenvalue 1 present).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// An enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A finite-precision computation produced a divisor at l^N, or precision
// arguments of two operands disagree.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// A model failed one of its structural self-checks.
class ModelError : public Error {
public:
    using Error::Error;
};

// The realizability predicate is false for the requested query.
class NotRealizable : public Error {
public:
    using Error::Error;
};

} // namespace neron
