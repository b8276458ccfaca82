#pragma once

#include <stdexcept>
#include <string>

namespace thetadiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied an argument outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Period matrix too close to the boundary of the Siegel space to evaluate.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or basis would exceed the configured cap.
class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

/// A singular value or theta magnitude sits too close to its decision threshold.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// The requested (a, b, g) combination has no section model.
class UnsupportedRegimeError : public Error {
 public:
  using Error::Error;
};

/// A Chow-class operation hit a degenerate slope (zero or opposite slopes).
class DegenerateClassError : public Error {
 public:
  using Error::Error;
};

/// Even-rank determinant calibration found no (or more than one) twist.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace thetadiv
