#include "heeg/exactnum/padic.hpp"

#include <algorithm>
#include <sstream>

#include "heeg/errors.hpp"

namespace heeg {

namespace {

Integer mod_pow(const Integer& x, unsigned long p, long k) {
  Integer m = pow_p(p, static_cast<unsigned long>(k));
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& x, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t())) {
    throw DivisionByZero("non-invertible residue");
  }
  return r;
}

}  // namespace

PadicNumber PadicNumber::exact_zero(unsigned long p) {
  PadicNumber z;
  z.p_ = p;
  return z;
}

PadicNumber PadicNumber::big_oh(unsigned long p, long absPrec) {
  PadicNumber z;
  z.p_ = p;
  z.exact_zero_ = false;
  z.val_ = absPrec;
  z.prec_ = 0;
  return z;
}

PadicNumber PadicNumber::from_parts(unsigned long p, long val, const Integer& unit, long prec) {
  if (prec <= 0) return big_oh(p, val);
  if (mpz_divisible_ui_p(unit.get_mpz_t(), p)) {
    throw std::invalid_argument("from_parts: unit divisible by p");
  }
  PadicNumber r;
  r.p_ = p;
  r.exact_zero_ = false;
  r.val_ = val;
  r.prec_ = prec;
  r.unit_ = mod_pow(unit, p, prec);
  return r;
}

PadicNumber PadicNumber::from_rational(const Rational& x, unsigned long p, long prec) {
  if (p < 2) throw std::invalid_argument("p-adic prime must be >= 2");
  if (prec < 1) throw std::invalid_argument("p-adic precision must be >= 1");
  if (x == 0) return exact_zero(p);
  Integer num = x.get_num(), den = x.get_den();
  Integer pp(p);
  long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()));
  Integer m = pow_p(p, static_cast<unsigned long>(prec));
  Integer u = mod_pow(num, p, prec) * inverse_mod(den, m);
  return from_parts(p, vn - vd, u, prec);
}

PadicNumber PadicNumber::from_integer(const Integer& x, unsigned long p, long prec) {
  return from_rational(Rational(x), p, prec);
}

PadicNumber PadicNumber::normalize(unsigned long p, long v, Integer n, long absPrec) {
  // n * p^v known modulo p^absPrec.
  if (v >= absPrec) return big_oh(p, absPrec);
  n = mod_pow(n, p, absPrec - v);
  if (n == 0) return big_oh(p, absPrec);
  Integer pp(p);
  long k = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
  return from_parts(p, v + k, n, absPrec - v - k);
}

void PadicNumber::check_same_prime(const PadicNumber& b) const {
  if (p_ != b.p_) throw std::invalid_argument("p-adic operands over different primes");
}

Integer PadicNumber::residue(long m) const {
  if (m <= 0) return 0;
  if (absolute_precision() < m) {
    throw InsufficientPrecision("residue mod p^" + std::to_string(m) + " needs more precision than " +
                                to_string());
  }
  if (is_zero()) return 0;
  if (val_ < 0) throw std::domain_error("residue of a non-integral p-adic number");
  if (val_ >= m) return 0;
  return mod_pow(unit_ * pow_p(p_, static_cast<unsigned long>(val_)), p_, m);
}

std::vector<unsigned long> PadicNumber::unit_digits(long n) const {
  std::vector<unsigned long> out;
  if (is_zero()) return out;
  Integer u = unit_;
  for (long i = 0; i < std::min(n, prec_); ++i) {
    out.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_));
  }
  return out;
}

PadicNumber PadicNumber::reduce_precision(long absPrec) const {
  if (absPrec >= absolute_precision()) return *this;
  if (exact_zero_) return big_oh(p_, absPrec);
  if (absPrec <= val_) return big_oh(p_, absPrec);
  return from_parts(p_, val_, unit_, absPrec - val_);
}

PadicNumber PadicNumber::scale_by_p_power(long k) const {
  if (exact_zero_) return *this;
  PadicNumber r = *this;
  r.val_ += k;
  return r;
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  PadicNumber r = *this;
  r.unit_ = pow_p(p_, static_cast<unsigned long>(prec_)) - unit_;
  return r;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  a.check_same_prime(b);
  if (a.exact_zero_) return b;
  if (b.exact_zero_) return a;
  long absPrec = std::min(a.absolute_precision(), b.absolute_precision());
  long v = std::min(a.val_, b.val_);
  if (v >= absPrec) return PadicNumber::big_oh(a.p_, absPrec);
  Integer n = 0;
  if (a.prec_ > 0) n += a.unit_ * pow_p(a.p_, static_cast<unsigned long>(a.val_ - v));
  if (b.prec_ > 0) n += b.unit_ * pow_p(a.p_, static_cast<unsigned long>(b.val_ - v));
  return PadicNumber::normalize(a.p_, v, n, absPrec);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  a.check_same_prime(b);
  if (a.exact_zero_ || b.exact_zero_) return PadicNumber::exact_zero(a.p_);
  if (a.prec_ == 0 || b.prec_ == 0) {
    // O(p^k) * (u p^w + ...) is O(p^(k + w)).
    return PadicNumber::big_oh(a.p_, a.val_ + b.val_);
  }
  long prec = std::min(a.prec_, b.prec_);
  return PadicNumber::from_parts(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, prec);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  a.check_same_prime(b);
  if (b.is_zero()) throw DivisionByZero("p-adic division by a value indistinguishable from zero");
  if (a.exact_zero_) return a;
  if (a.prec_ == 0) return PadicNumber::big_oh(a.p_, a.val_ - b.val_);
  long prec = std::min(a.prec_, b.prec_);
  Integer m = pow_p(a.p_, static_cast<unsigned long>(prec));
  return PadicNumber::from_parts(a.p_, a.val_ - b.val_, a.unit_ * inverse_mod(b.unit_, m), prec);
}

std::string PadicNumber::to_string() const {
  std::ostringstream os;
  if (exact_zero_) return "0";
  if (prec_ == 0) {
    os << "O(" << p_ << "^" << val_ << ")";
    return os.str();
  }
  os << unit_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << val_ + prec_ << ")";
  return os.str();
}

bool congruent(const PadicNumber& a, const PadicNumber& b, long m) {
  if (a.prime() != b.prime()) throw std::invalid_argument("congruence across different primes");
  if (a.absolute_precision() < m || b.absolute_precision() < m) {
    throw InsufficientPrecision("congruence mod p^" + std::to_string(m) + " between " + a.to_string() +
                                " and " + b.to_string());
  }
  PadicNumber d = a - b;
  return d.is_exact_zero() || d.valuation() >= m;
}

}  // namespace heeg
