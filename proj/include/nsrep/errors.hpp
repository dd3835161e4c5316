#pragma once

#include <stdexcept>
#include <string>

namespace nsrep {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct ZeroPolynomial : Error {
  ZeroPolynomial() : Error("operation undefined on the zero polynomial") {}
};

struct NegativeLevel : Error {
  NegativeLevel() : Error("level must be nonnegative") {}
};

struct LevelExceedsBound : Error {
  using Error::Error;
};

// A negative-mode action pushed a component above the configured level cap.
struct TruncationOverflow : Error {
  using Error::Error;
};

struct OutOfBand : Error {
  using Error::Error;
};

// The gcd of one class of phi polynomials vanished identically.
struct InfinitePhiClass : Error {
  using Error::Error;
};

} // namespace nsrep
