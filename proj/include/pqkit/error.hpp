#pragma once

#include <stdexcept>
#include <string>

namespace pqkit {

// Argument outside the mathematical domain of an operation (negative time,
// density above jam density, queue content outside [0, capacity]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configuration violates a stability or well-definedness bound. The
// message names the violated bound.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed scenario input. Carries a line/field location in the message.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested analysis exists only under hypotheses the input does not meet.
class UnsupportedCase : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pqkit
