#pragma once

#include <stdexcept>
#include <string>

namespace ptc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested order exceeds a precomputed table.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Evaluation inside the guard band before the prescribed time.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Controller parameters violate the design conditions (non-Hurwitz E, alpha too large).
class InfeasibleDesign : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidPlant : public Error {
 public:
  using Error::Error;
};

/// The declared disturbance bound |f| <= phi*|x| + phi0 was violated along a trajectory.
class AuditError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptc
