#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantor {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction would introduce a coordinate at or beyond the depth cap.
class DepthCapExceeded : public Error {
public:
    DepthCapExceeded(uint32_t coord, uint32_t cap)
        : Error("coordinate " + std::to_string(coord) + " exceeds depth cap " + std::to_string(cap)),
          coord(coord), cap(cap) {}
    uint32_t coord;
    uint32_t cap;
};

/// A word argument is too short to determine the requested output.
class InsufficientPrefix : public Error {
public:
    using Error::Error;
};

/// Conditioning on a set of measure zero.
class ZeroConditioningMass : public Error {
public:
    using Error::Error;
};

/// A test stage violates the 2^-n level bound.
class InvalidTest : public Error {
public:
    InvalidTest(size_t level, const std::string& what)
        : Error("level " + std::to_string(level) + ": " + what), level(level) {}
    size_t level;
};

/// No candidate bit reached the acceptance threshold within the search bound.
class CandidateNotFound : public Error {
public:
    using Error::Error;
};

/// Two or more candidate bits reached the acceptance threshold.
class AmbiguousCandidate : public Error {
public:
    using Error::Error;
};

/// A recovered partial map sends two coordinates to the same bit.
class NonInjectiveRecovery : public Error {
public:
    using Error::Error;
};

/// Corruption mass incompatible with the promise level.
class InvalidMass : public Error {
public:
    using Error::Error;
};

/// An operation's stated precondition does not hold.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

/// Malformed input file or string.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    size_t line;
};

} // namespace cantor
