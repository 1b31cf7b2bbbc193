#pragma once

#include <stdexcept>
#include <string>

namespace vgprod {

/// Argument outside the mathematical domain of an operation (x <= 0 for K_nu,
/// non-finite evaluation points, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Distribution parameters that violate the family's invariants.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closure operation applied to laws that do not share theta/sigma or have mu != 0.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Empty, undersized or overflowing counts (sample sizes, block counts, n).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed verification suite configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vgprod
