#pragma once

#include <stdexcept>
#include <string>

namespace dynmatch {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Self-loop or otherwise unusable edge.
struct InvalidEdge : Error {
    using Error::Error;
};

/// Vertex id outside [0, n).
struct InvalidVertex : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

/// Bad engine/solver configuration (epsilon, threshold, size caps).
struct ConfigError : Error {
    using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

/// Ordered-matching instance that violates its own well-formedness.
struct MalformedInstance : Error {
    using Error::Error;
};

} // namespace dynmatch
