#pragma once

#include <stdexcept>

namespace disguise {

// Rejected inputs (shape mismatches, violated preconditions) use
// std::invalid_argument directly.

// Malformed external data, e.g. a broken PGM header.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failed file open/read/write.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Keyfile problems, split by cause so callers can map them to exit codes.
struct KeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct KeyFormatError : KeyError {
    using KeyError::KeyError;
};
struct KeyCorruptError : KeyError {
    using KeyError::KeyError;
};
struct KeyVersionError : KeyError {
    using KeyError::KeyError;
};

}  // namespace disguise
