#pragma once

#include <stdexcept>
#include <string>

namespace toehold {

/// Thrown when an argument lies outside an operation's domain
/// (k > n in a binomial, sigma outside [0,1], n < 1, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a self-check fails. Always an implementation bug, never bad input.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace toehold
