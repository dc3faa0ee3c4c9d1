#pragma once

#include <stdexcept>
#include <string>

namespace qclaw {

// Index or parameter outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds a simulator's resource ceiling (e.g. explicit state vectors).
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

// Caller violated a usage contract, e.g. an unbounded search on an input
// without solutions.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// A construction produced an empty or zero-valued object where the math
// requires a positive one (empty relation, zero adversary parameter).
class DegenerateError : public std::runtime_error {
 public:
  explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qclaw
