#pragma once

#include <stdexcept>
#include <string>

namespace sgn {

/// Point or parameter outside the domain of an evaluator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical approximation did not reach its target accuracy.
class ApproximationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge collapsed or a net lost its immersion.
class DegenerateNet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed combinatorial input (relations, blocks, graphs).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgn
