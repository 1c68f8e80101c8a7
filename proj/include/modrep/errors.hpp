#pragma once

#include <stdexcept>
#include <string>

namespace modrep {

/// Arithmetic outside the domain of an operation (inverting zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shapes or fields of operands do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subgroup or element that was required to lie in a group does not.
class MembershipError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized search ran out of its budget. Never a wrong answer, just no answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (group files, suite files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modrep
