#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace occbloom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A filter (or observation) has every bit set, so estimators diverge.
class SaturationError : public Error {
 public:
  using Error::Error;
};

/// The observation carries no information for the estimator (zero divisor).
class UnsupportedObservation : public Error {
 public:
  using Error::Error;
};

/// Two filters with different parameters were combined.
class IncompatibleFilters : public Error {
 public:
  using Error::Error;
};

/// The requested false-positive target cannot be met.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Efficiency is undefined when the false-positive rate is zero.
class UndefinedEfficiency : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized filter; offset is the byte position of the fault.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace occbloom
