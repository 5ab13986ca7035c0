#pragma once

#include <stdexcept>
#include <string>

namespace gns {

/// Argument outside an operation's domain (zero cutoff, zero wavevector, ε ≤ 0, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Collocation grid too coarse for exact trigonometric quadrature.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State length or basis identity does not match the operation's basis.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ratio with a vanishing denominator (e.g. Ladyzhenskaya ratio of the zero state).
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed configuration or input file. `line()` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace gns
