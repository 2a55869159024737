#pragma once

#include <stdexcept>
#include <string>

namespace hyperdisc {

// Base class for all recoverable library errors. Subclasses distinguish the
// failure family so callers (and the CLI) can map them to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem-level failure: missing file, unreadable stream, failed rename.
struct IoError : Error {
    using Error::Error;
};

// Input file is syntactically malformed. Message names the offending line.
struct ParseError : Error {
    using Error::Error;
};

// Input is well-formed but violates a data invariant (duplicate id, NaN score).
struct ValidationError : Error {
    using Error::Error;
};

// A caller passed an argument outside the documented domain.
struct ArgumentError : Error {
    using Error::Error;
};

// A token or node was requested that does not exist in the queried structure.
struct LookupError : Error {
    using Error::Error;
};

// A configuration cannot be satisfied (infeasible synthetic layout, empty vocabulary).
struct ConfigError : Error {
    using Error::Error;
};

// Embedding training cannot proceed (empty corpus, no token meets min frequency).
struct TrainError : Error {
    using Error::Error;
};

}  // namespace hyperdisc
