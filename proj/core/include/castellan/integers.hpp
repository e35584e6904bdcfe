#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace castellan {

/// Arbitrary-precision integer. Tuple entries grow doubly exponentially
/// along castling walks, so fixed-width arithmetic is never used.
using Int = mpz_class;

/// Exact rational, used by the tensor laboratory.
using Rat = mpq_class;

/// Base class for domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed (e.g. residual drift during a
/// descent). Callers should treat this as a bug, not bad input.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(what) {}
};

inline Int parse_int(const std::string& text) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
}

inline std::string to_string(const Int& value) { return value.get_str(); }

}  // namespace castellan
