#pragma once

#include <stdexcept>
#include <string>

namespace anomalia {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data does not hold.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the configured element bound.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// A constructed object failed its own validation.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// Verlinde rounding residue above tolerance.
class ModularityError : public Error {
public:
    using Error::Error;
};

/// Gauss sum too small to extract a phase from.
class DegenerateSumError : public Error {
public:
    using Error::Error;
};

} // namespace anomalia
