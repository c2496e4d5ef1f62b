#pragma once

#include <stdexcept>
#include <string>

namespace magicmon {

// Thrown when operands have incompatible qubit counts or shapes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a routine is asked for more qubits than it supports.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a tolerance-based classification is inconsistent
// (e.g. a near-unit Pauli set that is not a group).
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace magicmon
