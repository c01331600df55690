#pragma once

#include <stdexcept>
#include <string>

namespace ncp {

/// Raised when an operation is called outside its precondition
/// (mismatched ground sets, non-refinement, unknown block, ...).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when text or JSON input cannot be decoded.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal consistency check fails. Any occurrence is a bug
/// in this library.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ncp
