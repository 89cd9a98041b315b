#pragma once

#include <stdexcept>
#include <string>

namespace lpmhd {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid, index out of band, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A binary or text file did not match its documented format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis required by an estimate does not hold for the
/// requested indices, so the estimate is not claimed.
class IndexConditionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A time step violated the advective CFL bound.
class CflError : public Error {
 public:
  CflError(const std::string& what, double dt) : Error(what), dt_(dt) {}
  double dt() const noexcept { return dt_; }

 private:
  double dt_;
};

}  // namespace lpmhd
