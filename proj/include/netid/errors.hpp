#pragma once

#include <stdexcept>
#include <string>

namespace netid {

// Base class for all library errors. The CLI maps any Error to exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input (JSON, DOT, rational-function literals).
struct SyntaxError : Error {
    explicit SyntaxError(const std::string& msg) : Error("syntax error: " + msg) {}
};

// A structural invariant was violated (self-loop, duplicate edge,
// out-of-range vertex, inconsistent assignment, ...).
struct InvariantError : Error {
    explicit InvariantError(const std::string& msg) : Error("invariant violation: " + msg) {}
};

// Path-set enumeration produced more sets than the configured cap.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg) : Error("enumeration cap exceeded: " + msg) {}
};

// Instance too large for an exhaustive procedure (n > max_exact_n,
// polynomial degree cap, ...).
struct SizeLimit : Error {
    explicit SizeLimit(const std::string& msg) : Error("size limit: " + msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error("division by zero: " + msg) {}
};

// Matrix is singular as a rational matrix (determinant identically zero).
struct Singular : Error {
    explicit Singular(const std::string& msg) : Error("singular matrix: " + msg) {}
};

// An entry has numerator degree exceeding denominator degree where a
// limit at infinity was required.
struct ImproperEntry : Error {
    explicit ImproperEntry(const std::string& msg) : Error("improper entry: " + msg) {}
};

// An operation was called outside its stated precondition.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error("precondition violated: " + msg) {}
};

}  // namespace netid
