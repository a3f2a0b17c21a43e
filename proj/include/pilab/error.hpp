#pragma once

#include <stdexcept>
#include <string>

namespace pilab {

/// Invalid input: a precondition of a public operation does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The engine could not produce a trustworthy answer (uncertified factor set,
/// cap exceeded, precision guard tripped, inconsistent ranks). These are bugs
/// or resource limits, never mathematical findings.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pilab
