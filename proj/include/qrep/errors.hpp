#pragma once

#include <stdexcept>
#include <string>

namespace qrep {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid quiver or representation data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A construction was asked for outside its hypotheses. The message names the
// hypothesis that failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrep
