#pragma once

#include <stdexcept>
#include <string>

namespace ccl {

// A caller broke an operation's precondition. The CLI maps this to exit code 1.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature, fit, or series evaluation failed to reach its tolerance. Exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

}  // namespace ccl
