#pragma once

#include <stdexcept>
#include <string>

namespace hypnls {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative radius, t = 0 for a singular kernel, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Valid request that this library deliberately does not support (dimension, geometry, Sobolev index).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate) : Error(what), estimate_(estimate) {}
  /// Last achieved self-convergence estimate.
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Requested snapshot time is not present in a trajectory.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Discretization too coarse for the request (too few snapshots, unresolved data scale).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypnls
