#pragma once

#include <stdexcept>

namespace gfe {

/// Base of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A value exceeded the configured magnitude cap.
struct MagnitudeExceeded : Error {
    using Error::Error;
};

struct InvalidExponent : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
struct DomainError : Error {
    using Error::Error;
};

/// Radical below 30, the smallest radical a primitive solution can have.
struct GTooSmall : Error {
    using Error::Error;
};

struct InvalidConfig : Error {
    using Error::Error;
};

struct CatalogCorrupt : Error {
    using Error::Error;
};

/// An operation was handed input that violates its stated precondition.
struct PreconditionFailed : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace gfe
