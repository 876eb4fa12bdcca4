#pragma once

#include <stdexcept>
#include <string>

namespace pivotboot {

// Base of every error raised by the library. Zero denominators are reported
// through these types rather than propagated as NaN.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All centered weights vanish (V^2 = 0) or their absolute sum is zero.
class DegenerateWeights : public Error {
 public:
  explicit DegenerateWeights(const std::string& what = "degenerate weights: centered weights vanish")
      : Error(what) {}
};

// Sample variance S_n^2 is zero.
class ZeroVariance : public Error {
 public:
  explicit ZeroVariance(const std::string& what = "sample variance is zero") : Error(what) {}
};

// Bootstrapped variance S*^2 is zero.
class ZeroBootstrapVariance : public Error {
 public:
  explicit ZeroBootstrapVariance(const std::string& what = "bootstrapped variance is zero")
      : Error(what) {}
};

// An empirical-process pivot or band has F(1 - F) = 0.
class DegenerateScale : public Error {
 public:
  explicit DegenerateScale(const std::string& what = "degenerate scale: F(1-F) = 0") : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A centering value (mu or F(x)) was supplied to a pivot that forbids one, or
// omitted from one that requires it.
class MuArityError : public Error {
 public:
  using Error::Error;
};

class InadmissibleParams : public Error {
 public:
  using Error::Error;
};

class NonIntegerRank : public Error {
 public:
  using Error::Error;
};

}  // namespace pivotboot
