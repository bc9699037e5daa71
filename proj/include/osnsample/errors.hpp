#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osnsample {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter combination.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a graph invariant (self-loop, duplicate edge).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unknown node id.
class LookupError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace osnsample
