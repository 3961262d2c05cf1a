#pragma once

#include <stdexcept>
#include <string>

namespace rydgate {

/// Malformed or incomplete input data (species file, config file, missing table entries).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to produce a trustworthy answer.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pair state sits on (or too close to) a Förster resonance; perturbative C6 is meaningless.
class ResonanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (selection rules, ranges, empty windows).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rydgate
