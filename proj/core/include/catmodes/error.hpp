#ifndef CATMODES_ERROR_HPP
#define CATMODES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace catmodes {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unusable input data (ragged rows, unknown columns, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The request would exceed a configured size or memory cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An internal invariant check failed; indicates a bug, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace catmodes

#endif  // CATMODES_ERROR_HPP
