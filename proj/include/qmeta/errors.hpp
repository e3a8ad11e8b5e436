#pragma once

#include <stdexcept>
#include <string>

namespace qmeta {

// Operand dimensions (qubit counts, matrix sizes) do not match.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A matrix is not of the expected shape (e.g. dimension not a power of two).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An argument is outside the mathematical domain of the operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A caller-supplied precondition does not hold (e.g. non-stabilizer input).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The eigenvector matrix of a generator is numerically defective.
struct ExceptionalPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested problem size exceeds a configured dense/DP limit.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A channel is not diagonal in a Pauli eigenbasis where one is required.
struct UnsupportedBasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A fixed-step integration became unstable; retry with smaller dt.
struct StepSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A runtime invariant (trace, Hermiticity, positivity) was violated.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed experiment configuration or input file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qmeta
