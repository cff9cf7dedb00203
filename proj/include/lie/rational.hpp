#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lie {

using Rational = mpq_class;
using Integer = mpz_class;

/// Integer vector in simple-root (or simple-coroot) coordinates.
using IntVec = std::vector<int>;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p" or "p/q" with optional sign. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);
std::string to_string(const IntVec& v);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Raised when an engine invariant is violated; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad user input: malformed matrices, out-of-range indices, wrong carriers.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematical failure on valid input: poles, non-regular points, divergent series.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lie
