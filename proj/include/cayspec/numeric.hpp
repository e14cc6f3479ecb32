#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace cayspec {

using cd = std::complex<double>;

/// Non-negative remainder.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Inverse of a modulo m; requires gcd(a, m) == 1. Returns 0 when m == 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return mod(old_s, m);
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

/// e^{2 pi i num/den}. The exponent is reduced into [0, den) before the
/// angle is formed; quarter turns are returned exactly.
inline cd root_of_unity(std::int64_t num, std::int64_t den) {
  const std::int64_t t = mod(num, den);
  if (t == 0) return {1.0, 0.0};
  if ((4 * t) % den == 0) {
    switch (4 * t / den) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace cayspec
