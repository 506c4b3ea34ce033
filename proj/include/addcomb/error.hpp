#pragma once

#include <stdexcept>
#include <string>

namespace addcomb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation that needs a nonempty set was handed an empty one.
class EmptySetError : public Error {
 public:
  using Error::Error;
};

// Mismatched or out-of-range dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// The requested instance exceeds the exhaustive-computation budget.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// A covering argument was asked to run with zero agreement.
class DegenerateAgreementError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message carries line/byte position.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace addcomb
