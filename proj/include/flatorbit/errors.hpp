#ifndef FLATORBIT_ERRORS_HPP
#define FLATORBIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flatorbit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (JSON, rational literals, operator strings).
class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingSubstitution : public Error {
 public:
  using Error::Error;
};

/// Structural assumption violated (Jacobi, Jordan-Hoelder support, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotNilpotent : public Error {
 public:
  using Error::Error;
};

class NonUnitCentralPairing : public Error {
 public:
  using Error::Error;
};

class NotFlat : public Error {
 public:
  using Error::Error;
};

class CenterNotOneDimensional : public Error {
 public:
  using Error::Error;
};

class InversionFailure : public Error {
 public:
  using Error::Error;
};

/// Commutant solve did not stabilize below the configured degree cap.
class DegreeEscalationLimit : public Error {
 public:
  using Error::Error;
};

/// Resource guard for PBW monomial generation.
class OrderLimit : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class QuadratureWindowTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace flatorbit

#endif
