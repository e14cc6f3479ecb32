#pragma once

#include <stdexcept>
#include <string>

namespace cayspec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A semidirect action that is not a homomorphism into (Z/mZ)^x, or
/// metacyclic parameters with gcd(r, m) != 1 or r^l != 1 (mod m).
class InvalidAction : public Error {
 public:
  using Error::Error;
};

/// Out-of-range structural parameter (for example a group order below 1).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// An encoding that does not name an element of the group.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

class NotClassFunction : public Error {
 public:
  using Error::Error;
};

class LayerNotInvariant : public Error {
 public:
  LayerNotInvariant(const std::string& what, int layer, int exponent)
      : Error(what), layer_(layer), exponent_(exponent) {}
  int layer() const { return layer_; }
  int exponent() const { return exponent_; }

 private:
  int layer_;
  int exponent_;
};

class IrrepValidationFailed : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent job configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cayspec
