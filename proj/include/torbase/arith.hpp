#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>

#include "torbase/errors.hpp"

namespace torbase {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

inline Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked_mul(a / g, b < 0 ? -b : b);
}

inline Int gcd_of(std::span<const Int> xs) {
  Int g = 0;
  for (Int x : xs) g = std::gcd(g, x);
  return g;
}

inline Int lcm_of(std::span<const Int> xs) {
  Int l = 1;
  for (Int x : xs) l = lcm(l, x);
  return l;
}

/// Dot product with overflow detection.
inline Int dot(std::span<const Int> a, std::span<const Int> b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

}  // namespace torbase
