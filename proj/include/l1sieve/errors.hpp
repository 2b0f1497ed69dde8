#pragma once

#include <stdexcept>
#include <string>

namespace l1sieve {

// Requested table or grid size is larger than the configured budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Argument outside the range covered by a table.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Kernel kind / parameter combination that the operation does not support.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateSetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An inequality or identity that holds analytically failed numerically.
// Always indicates a bug; the CLI maps it to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace l1sieve
