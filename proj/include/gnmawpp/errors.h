#pragma once

#include <stdexcept>
#include <string>

namespace gnmawpp {

/// A bit string that does not encode an element of the oracle's group.
class InvalidCodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration (closure, walk table, branch list) exceeded its configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The step search hit its ceiling before the deviation dropped below epsilon.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact bound that must hold for a correct implementation was violated.
class BoundViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed instance file, literal, or report document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gnmawpp
