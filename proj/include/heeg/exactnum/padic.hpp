#pragma once

#include <climits>
#include <string>
#include <vector>

#include "heeg/exactnum/rational.hpp"

namespace heeg {

inline constexpr long kDefaultPadicPrec = 32;

// Capped relative-precision p-adic number u * p^v + O(p^(v + prec)).
// Three states: exact zero, a value with prec >= 1 significant digits, and an
// indistinguishable-from-zero O(p^v) (prec == 0).
class PadicNumber {
 public:
  static constexpr long kInfinity = LONG_MAX;

  PadicNumber() = default;  // exact zero at p = 2

  static PadicNumber exact_zero(unsigned long p);
  static PadicNumber big_oh(unsigned long p, long absPrec);
  static PadicNumber from_rational(const Rational& x, unsigned long p, long prec);
  static PadicNumber from_integer(const Integer& x, unsigned long p, long prec);
  // Value with the given valuation and unit (reduced mod p^prec; must be a unit).
  static PadicNumber from_parts(unsigned long p, long val, const Integer& unit, long prec);

  unsigned long prime() const { return p_; }
  bool is_exact_zero() const { return exact_zero_; }
  // True when the value is zero to its working precision (exact or O(p^k)).
  bool is_zero() const { return exact_zero_ || prec_ == 0; }
  // For an inexact zero this is the absolute precision k of O(p^k).
  long valuation() const { return exact_zero_ ? kInfinity : val_; }
  long relative_precision() const { return exact_zero_ ? kInfinity : prec_; }
  long absolute_precision() const { return exact_zero_ ? kInfinity : val_ + prec_; }
  const Integer& unit() const { return unit_; }
  bool is_unit() const { return !is_zero() && val_ == 0; }

  // Residue in [0, p^m) of an integral value; needs absolute precision >= m.
  Integer residue(long m) const;
  // First n base-p digits of the unit part.
  std::vector<unsigned long> unit_digits(long n) const;
  PadicNumber reduce_precision(long absPrec) const;
  PadicNumber scale_by_p_power(long k) const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& b) { return *this = *this + b; }
  PadicNumber& operator-=(const PadicNumber& b) { return *this = *this - b; }
  PadicNumber& operator*=(const PadicNumber& b) { return *this = *this * b; }

  std::string to_string() const;

 private:
  unsigned long p_ = 2;
  bool exact_zero_ = true;
  long val_ = 0;
  long prec_ = 0;
  Integer unit_ = 0;

  void check_same_prime(const PadicNumber& b) const;
  static PadicNumber normalize(unsigned long p, long v, Integer n, long absPrec);
};

// a == b mod p^m. Throws InsufficientPrecision unless both sides carry
// absolute precision >= m.
bool congruent(const PadicNumber& a, const PadicNumber& b, long m);

}  // namespace heeg
