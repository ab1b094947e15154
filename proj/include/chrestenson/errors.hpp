#pragma once

// Error taxonomy shared across the library.

#include <stdexcept>

namespace chrestenson {

// Base type for all library failures.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter is outside its documented domain (bad order, index out of
// range, ...).
class argument_error : public error {
public:
    using error::error;
};

// The requested object is not constant on the supplied grid; a finer
// resolution is needed.
class resolution_error : public error {
public:
    using error::error;
};

// A vector length does not match the grid contract.
class size_error : public error {
public:
    using error::error;
};

// Memory cap or 64-bit overflow guard tripped.
class guard_error : public error {
public:
    using error::error;
};

} // namespace chrestenson
