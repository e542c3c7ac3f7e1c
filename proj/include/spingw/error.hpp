#pragma once

#include <stdexcept>
#include <string>

namespace spingw {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request lies outside the region certified by a series' truncation bounds.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// An argument violates a documented precondition (bad range, unknown variable,
/// inadmissible type, malformed graph, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace spingw
