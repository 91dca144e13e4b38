#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mutagame {

// Invalid scenario or argument values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Carries every violation found while validating a scenario, not only the first.
class ValidationError : public ConfigError {
 public:
  explicit ValidationError(std::vector<std::string> issues);

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Problem size beyond what an exhaustive algorithm is allowed to attempt.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable input, unwritable output, or a document that fails to parse.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mutagame
