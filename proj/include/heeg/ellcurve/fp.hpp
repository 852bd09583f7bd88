#pragma once

#include <cstdint>
#include <optional>

#include "heeg/exactnum/rational.hpp"

// Word-size arithmetic in F_p, p < 2^63.
namespace heeg::fp {

using u64 = std::uint64_t;

inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
inline u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return (s >= p || s < a) ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
u64 pow(u64 a, u64 e, u64 p);
// Inverse of a nonzero residue.
u64 inv(u64 a, u64 p);
// Legendre symbol (a/p) for odd p; 0 when p | a.
int legendre(u64 a, u64 p);
std::optional<u64> sqrt(u64 a, u64 p);

u64 reduce(const Integer& x, u64 p);
// Throws NonInvertibleDenominator when p divides the denominator.
u64 reduce(const Rational& x, u64 p);

// Number of distinct roots in F_p of x^3 + b x^2 + c x + d.
int cubic_root_count(u64 b, u64 c, u64 d, u64 p);
// Whether a x^2 + b x + c has a root in F_p (a may vanish).
bool quadratic_has_root(u64 a, u64 b, u64 c, u64 p);

}  // namespace heeg::fp
