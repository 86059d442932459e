#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace isoparam {

// Base of every error thrown by the toolkit.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Division by zero and similar arithmetic faults.
class ArithmeticError : public Error
{
public:
  using Error::Error;
};

// Shape or indeterminate-list mismatches, ungrounded variables, duplicate nodes.
class StructuralError : public Error
{
public:
  using Error::Error;
};

// Parameters outside their documented domain.
class ParameterError : public Error
{
public:
  using Error::Error;
};

// An identity that must hold exactly (or to a pinned tolerance) did not.
class VerificationError : public Error
{
public:
  using Error::Error;
};

// Invalid geometric input (asymmetric shape matrix, non-tangent vector, ...).
class InputError : public Error
{
public:
  using Error::Error;
};

// det B(r) = 0: the parallel family has a focal point at r.
class FocalPointError : public Error
{
public:
  using Error::Error;
};

// Degenerate frames, critical points and other numerical breakdowns.
class NumericalError : public Error
{
public:
  using Error::Error;
};

// Failure to construct an isometry between two points.
class ConstructionError : public Error
{
public:
  using Error::Error;
};

// Bad suite configuration; key is the offending setting, line is 0 for command-line values.
class ConfigError : public Error
{
public:
  ConfigError(const std::string & msg, std::string key = {}, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), key_(std::move(key)), line_(line)
  {
  }
  const std::string & key() const { return key_; }
  int line() const { return line_; }

private:
  std::string key_;
  int line_;
};

// Unreadable or unwritable files.
class IoError : public Error
{
public:
  using Error::Error;
};

}  // namespace isoparam
