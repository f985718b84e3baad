#pragma once

#include <stdexcept>
#include <string>

namespace cohlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// An iterative or adaptive procedure failed to meet its tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  /// Best error estimate reached before giving up.
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

/// No hand-derived inversion formula exists for the requested bath.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

}  // namespace cohlab
