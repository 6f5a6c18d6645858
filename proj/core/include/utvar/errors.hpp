#pragma once

#include <stdexcept>
#include <string>

namespace utvar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different semirings, or an element is outside the carrier.
class CarrierMismatch : public Error {
 public:
  using Error::Error;
};

/// The semiring's equality strategy cannot answer the request.
class UnsupportedStrategy : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or evaluation cap was hit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input is outside the image a partial inverse is defined on.
class NotInImage : public Error {
 public:
  using Error::Error;
};

}  // namespace utvar
