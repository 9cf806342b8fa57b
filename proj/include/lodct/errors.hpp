#ifndef LODCT_ERRORS_HPP
#define LODCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lodct {

/// Data-format or I/O failure (CLI exit code 3).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BadMagicError : public IoError {
public:
  using IoError::IoError;
};

class TruncatedFileError : public IoError {
public:
  using IoError::IoError;
};

class DimensionOverflowError : public IoError {
public:
  using IoError::IoError;
};

/// Numerical failure, e.g. the noise-model overflow guard (CLI exit code 4).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace lodct

#endif
