#pragma once

#include <stdexcept>
#include <string>

namespace ladderlab {

// Base of every error raised by the library. The CLI maps ConfigError to exit
// code 2 and every other subclass to 3 (numerical failure).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public ConvergenceError {
 public:
  QuadratureError(const std::string& what, double worst_lo, double worst_hi,
                  double worst_error)
      : ConvergenceError(what),
        worst_lo_(worst_lo),
        worst_hi_(worst_hi),
        worst_error_(worst_error) {}

  double worst_lo() const noexcept { return worst_lo_; }
  double worst_hi() const noexcept { return worst_hi_; }
  double worst_error() const noexcept { return worst_error_; }

 private:
  double worst_lo_;
  double worst_hi_;
  double worst_error_;
};

// The mean-value scan found no sign change; a finer scan may succeed.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class SeedNotFoundError : public Error {
 public:
  using Error::Error;
};

// Curve continuation shrank below the minimum step, usually near a critical
// point of |F|.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ladderlab
