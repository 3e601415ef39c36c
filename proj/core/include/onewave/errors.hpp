#pragma once

#include <stdexcept>
#include <string>

namespace onewave {

// Invalid arguments or violated preconditions.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown: singular systems, non-convergence, resonances.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace onewave
