#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dkwsmc {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Invalid argument to an operation (k = 0, t outside (0,1), gamma <= 0, ...).
class ParameterError : public Error {
  public:
    using Error::Error;
};

// Syntactically malformed model file or query string. The message carries
// the offending location (byte offset or field path).
class ParseError : public Error {
  public:
    using Error::Error;
};

// Structurally well-formed input that violates a model invariant
// (probabilities not summing to 1, negative reward, unknown state id, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

// File system failure (missing model file, unwritable CSV path).
class IoError : public Error {
  public:
    using Error::Error;
};

// A sampled path did not reach its stopping condition within max_steps,
// or provably never can. Carries the offending trace index when known.
class NonTerminationError : public Error {
  public:
    explicit NonTerminationError(const std::string& what,
                                 std::optional<std::size_t> trace = std::nullopt)
        : Error(what), trace_index(trace) {}

    std::optional<std::size_t> trace_index;
};

}  // namespace dkwsmc
