#pragma once

#include <stdexcept>

namespace lab {

// Bad arguments: wrong shapes, invariant violations, unknown names.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A correction strategy returned a value outside its contract.
class InvalidStrategy : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Mathematically undefined quantity (support violation, degenerate spectrum).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateSpectrum : public DomainError {
 public:
  using DomainError::DomainError;
};

// Should be unreachable for valid inputs.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lab
