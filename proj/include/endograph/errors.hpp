#pragma once

#include <stdexcept>
#include <string>

namespace endograph {

/// A group or formula parameter violates its documented constraint.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation was refused because its input exceeds a configured cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A documented precondition on the argument was not met.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace endograph
