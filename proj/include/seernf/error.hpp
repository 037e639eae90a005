#pragma once

#include <stdexcept>
#include <string>

namespace seernf {

// Base class for every error the library raises. The CLI maps any Error to
// a single-line diagnostic and a nonzero exit status.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed text in a label, registry, mapping, bank, or dataset file.
class ParseError : public Error {
public:
    using Error::Error;
};

// A numeric argument outside its documented domain (e.g. rating position
// outside [0, 19]).
class DomainError : public Error {
public:
    using Error::Error;
};

// Structurally invalid in-process input (wrong count, non-positive value,
// missing parameter, unknown case id).
class InputError : public Error {
public:
    using Error::Error;
};

// A dataset record that violates its invariants (e.g. non-positive actual
// effort).
class DataError : public Error {
public:
    using Error::Error;
};

// An invalid configuration value (e.g. fd_step <= 0).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A finite computation produced a non-finite result.
class NumericError : public Error {
public:
    using Error::Error;
};

// A case protocol that cannot proceed (e.g. empty training split).
class CaseError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (missing path, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace seernf
