#pragma once

#include <stdexcept>
#include <string>

namespace cuspcalc {

// Raised when an input violates the domain preconditions of an operation.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cuspcalc
