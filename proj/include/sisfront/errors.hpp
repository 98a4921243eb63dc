#pragma once

#include <stdexcept>
#include <string>

namespace sisfront {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or model parameters (CLI exit code 1).
struct ValidationError : Error {
    using Error::Error;
};

/// A numerical procedure failed to converge or produced invalid state
/// (CLI exit code 2).
struct NumericError : Error {
    using Error::Error;
};

/// A classification or threshold probe could not reach a verdict within
/// its horizon budget (CLI exit code 3).
struct InconclusiveError : Error {
    using Error::Error;
};

}  // namespace sisfront
