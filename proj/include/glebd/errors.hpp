#pragma once

#include <stdexcept>
#include <string>

namespace glebd {

// Bad user input or violated precondition. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that started from valid input failed to reach the
// requested accuracy or produced non-finite values. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace glebd
