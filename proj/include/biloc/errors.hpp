#pragma once

#include <stdexcept>
#include <string>

namespace biloc {

/// A density matrix (or state description) that fails hermiticity, trace or
/// positivity checks.
class InvalidState : public std::invalid_argument {
public:
    explicit InvalidState(const std::string& what) : std::invalid_argument(what) {}
};

/// A parameter outside the range an operation is defined on.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed textual input (JSON state descriptions, grid specs).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace biloc
