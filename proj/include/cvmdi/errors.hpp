#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cvmdi {

/// Bad user input: invalid parameters, malformed config, unknown keys.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One ConfigError carrying every violated invariant, each naming its field.
class ValidationError : public ConfigError {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A formula was evaluated outside its mathematical domain, or produced an
/// unphysical Gaussian state.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root finder or optimizer found no sign change / no feasible point.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvmdi
