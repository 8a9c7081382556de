#pragma once

#include <stdexcept>
#include <string>

namespace combinf {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is out of range (q < 1, k not dividing p, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A request exceeds a hard enumeration bound.
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Input data is malformed: unparsable files, asymmetric or non-finite
/// matrices, mismatched labels or dimensions.
class DataError : public Error {
public:
    using Error::Error;
};

/// Two sequences (or two spanning forests) that must be compared have
/// different lengths.
class LengthMismatchError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace combinf
