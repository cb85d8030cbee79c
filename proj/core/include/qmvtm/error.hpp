#pragma once

#include <stdexcept>
#include <string>

namespace qmvtm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An Element was used with an algebra it does not belong to.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  using Error::Error;
};

// An axiom family was requested whose prerequisite family fails.
class PrerequisiteMissing : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Bad arguments to an operation (empty input, unknown symbol, bad x, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or structurally invalid file content.
class LoadError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmvtm
