#pragma once

#include <stdexcept>
#include <string>

namespace topowalk {

// Bad argument: point outside the lattice, inverted range, lattice too small.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An invariant was requested where the winding integrand vanishes.
class OnPhaseBoundary : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Invalid experiment configuration. `field` is a JSON path like "timing.dt".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace topowalk
