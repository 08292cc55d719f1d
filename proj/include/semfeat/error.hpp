#pragma once

#include <stdexcept>
#include <string>

namespace semfeat {

/// Base class for every error the library raises on bad input or configuration.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a domain invariant (mask value out of range, bad detection record...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or out-of-range parameters (bin count, shapes, vocabulary sizes).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be read/written or its contents are malformed.
class IoError : public Error {
public:
    using Error::Error;
};

/// A transform would move labeled pixels outside the frame.
class ClippingError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace semfeat
