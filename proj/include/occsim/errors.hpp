#pragma once

#include <stdexcept>
#include <string>

namespace occsim {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller passed an argument outside an operation's domain.
struct ArgumentError : Error {
    using Error::Error;
};

// Input data (files, spec strings) failed validation.
struct ValidationError : Error {
    using Error::Error;
};

// Input text could not be parsed; carries a 1-based line number when known.
struct ParseError : ValidationError {
    ParseError(const std::string& what, int line)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_number(line) {}
    explicit ParseError(const std::string& what) : ValidationError(what), line_number(0) {}
    int line_number;
};

// A hard resource cap (state-space size, step budget, memory) was exceeded.
struct CapacityError : Error {
    using Error::Error;
};

}  // namespace occsim
