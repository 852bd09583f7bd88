#pragma once

#include <mpfr.h>

#include <string>

#include "heeg/exactnum/rational.hpp"

namespace heeg {

inline constexpr long kDefaultComplexBits = 128;
inline constexpr long kMaxComplexBits = 4096;

// RAII mpfr_t; arithmetic rounds to nearest at the larger operand precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultComplexBits);
  BigFloat(long v, mpfr_prec_t prec);
  BigFloat(const Rational& q, mpfr_prec_t prec);
  BigFloat(const Integer& n, mpfr_prec_t prec);
  static BigFloat from_double(double d, mpfr_prec_t prec);
  static BigFloat pi(mpfr_prec_t prec);
  // 2^e exactly.
  static BigFloat pow2(long e, mpfr_prec_t prec);

  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }
  BigFloat with_prec(mpfr_prec_t prec) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 30) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;
  Integer round_to_integer() const;
  Integer floor_to_integer() const;
  // Exact rational value of the binary float.
  Rational to_rational() const;

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(long s, const BigFloat& a);
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);

// Nonnegative error bound; every operation rounds upward.
class ErrBound {
 public:
  ErrBound() : ErrBound(0.0) {}
  ErrBound(double d);  // NOLINT: implicit from literals is convenient
  static ErrBound of_abs(const BigFloat& x);
  static ErrBound pow2(long e);
  // Upper bound for sqrt(re^2 + im^2).
  static ErrBound hypot_up(const BigFloat& re, const BigFloat& im);
  // Lower bound for sqrt(re^2 + im^2).
  static ErrBound hypot_down(const BigFloat& re, const BigFloat& im);

  ErrBound(const ErrBound& o);
  ErrBound& operator=(const ErrBound& o);
  ~ErrBound();

  friend ErrBound operator+(const ErrBound& a, const ErrBound& b);
  friend ErrBound operator*(const ErrBound& a, const ErrBound& b);
  // a / b rounded up; b > 0.
  friend ErrBound operator/(const ErrBound& a, const ErrBound& b);
  ErrBound& operator+=(const ErrBound& b) { return *this = *this + b; }
  friend bool operator<(const ErrBound& a, const ErrBound& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator<=(const ErrBound& a, const ErrBound& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  ErrBound expm1_up() const;
  ErrBound sqrt_up() const;
  // max(0, x - y) rounded down; used for lower bounds.
  static ErrBound sub_down(const ErrBound& x, const ErrBound& y);
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDU); }
  long log2_ceil() const;
  BigFloat to_bigfloat(mpfr_prec_t prec) const;
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
};

ErrBound max(const ErrBound& a, const ErrBound& b);

// re + i*im with |computed - exact| <= err.
class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = kDefaultComplexBits);
  BigComplex(BigFloat re, BigFloat im, ErrBound err = ErrBound());
  static BigComplex from_rational(const Rational& re, const Rational& im, mpfr_prec_t prec);
  // exp(i*theta) for real theta given exactly as the BigFloat.
  static BigComplex unit_circle(const BigFloat& theta);

  mpfr_prec_t prec() const { return re_.prec(); }
  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  const ErrBound& err() const { return err_; }
  BigComplex with_extra_error(const ErrBound& e) const;
  BigComplex with_prec(mpfr_prec_t prec) const;

  // Upper/lower bounds for the modulus of the exact value.
  ErrBound abs_upper() const;
  ErrBound abs_lower() const;
  ErrBound center_abs_upper() const;

  BigComplex conj() const { return BigComplex(re_, -im_, err_); }
  BigComplex mul_i() const { return BigComplex(-im_, re_, err_); }
  BigComplex operator-() const { return BigComplex(-re_, -im_, err_); }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  // Exact real scalar (error scales by |s|).
  friend BigComplex operator*(const BigFloat& s, const BigComplex& a);
  BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
  BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }

  std::string to_string(int digits = 20) const;

 private:
  BigFloat re_, im_;
  ErrBound err_;
};

BigComplex exp(const BigComplex& z);
// Principal branch; the error bound widens when z straddles the negative axis.
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, unsigned long n);

struct BoundedReal {
  BigFloat value;
  ErrBound err;
};

// AGM of two positive reals known to within inErr each.
BoundedReal agm(const BigFloat& a, const BigFloat& b, const ErrBound& inErr);

}  // namespace heeg
