#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace admd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite input, or a value outside an operation's mathematical domain.
class InputDomainError : public Error {
 public:
  using Error::Error;
};

/// Fewer snapshots than an operation needs (N < 2, or q > N - 1).
class TooFewSnapshotsError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid user parameter (sketch too large, bad Achlioptas s, bad grid...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: all-zero data, or a zero singular value that survived
/// truncation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularTruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Malformed or truncated binary matrix file; carries the offending offset.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t byte_offset)
      : Error(what + " (at byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::uint64_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace admd
