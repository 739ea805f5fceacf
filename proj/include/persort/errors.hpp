#pragma once

#include <stdexcept>
#include <string>

namespace persort {

// Input text or JSON that cannot be turned into a domain object.
class ParseError : public std::invalid_argument {
public:
	explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// A well-formed input outside an operation's domain (e.g. a non-commuting
// permutation handed to commuting_scenario).
class DomainError : public std::domain_error {
public:
	explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised when the number of sign assignments to explore is above the cap.
class BudgetExceeded : public std::runtime_error {
public:
	explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace persort
