#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace iqoap {

/// Raised when an exact integer computation leaves the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when a computation would exceed a configured size budget
/// (qubit count for dense arrays, box size for enumeration).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t narrow_checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw OverflowError("value does not fit in int64");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace iqoap
