#pragma once

#include <stdexcept>
#include <string>

namespace hhh {

// Each failure mode has its own type so the CLI can map it to an exit code.

class InvalidDegrees : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingBaseCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChecksumMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PositivityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotStabilized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeCoefficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguousShift : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConflictingEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hhh
