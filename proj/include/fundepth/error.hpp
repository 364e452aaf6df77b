#pragma once

#include <stdexcept>
#include <string>

namespace fundepth {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with the data itself (exit code 1 in the CLI).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter values (exit code 2 in the CLI).
class ParameterError : public Error {
 public:
  using Error::Error;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class GridError : public DataError {
 public:
  using DataError::DataError;
};

/// Curve length or grid does not match the reference sample.
class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

class NumericalError : public DataError {
 public:
  using DataError::DataError;
};

/// Every projection of the sample has (numerically) zero spread.
class DegenerateSampleError : public DataError {
 public:
  using DataError::DataError;
};

/// The empirical distribution is a point mass at the evaluated point.
class UndefinedDepthError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace fundepth
