#pragma once

#include <optional>
#include <string>
#include <utility>

#include "heeg/exactnum/padic.hpp"
#include "heeg/exactnum/rational.hpp"

namespace heeg {

// u + v*sqrt(D) in Q(sqrt D), D a fundamental discriminant.
class QuadElem {
 public:
  QuadElem() = default;
  explicit QuadElem(long D, Rational u = 0, Rational v = 0);

  long disc() const { return D_; }
  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }
  bool is_rational() const { return v_ == 0; }
  bool is_zero() const { return u_ == 0 && v_ == 0; }

  QuadElem conj() const { return QuadElem(D_, u_, -v_); }
  Rational norm() const { return u_ * u_ - v_ * v_ * D_; }
  Rational trace() const { return 2 * u_; }

  QuadElem operator-() const { return QuadElem(D_, -u_, -v_); }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator/(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator*(const Rational& r, const QuadElem& a);
  friend bool operator==(const QuadElem& a, const QuadElem& b);

  std::string to_string() const;

 private:
  long D_ = 1;
  Rational u_ = 0, v_ = 0;
};

bool is_fundamental_discriminant(long D);
// Exact square root in K, if one exists.
std::optional<QuadElem> quad_sqrt(const QuadElem& z);

// Q(sqrt D) -> Q_p determined by a Hensel lift r of sqrt D.
class QuadEmbedding {
 public:
  QuadEmbedding(long D, unsigned long p, long prec, bool negate);

  long disc() const { return D_; }
  unsigned long prime() const { return p_; }
  long precision() const { return prec_; }
  bool negated() const { return negate_; }
  // The image of sqrt D, to at least `prec` digits.
  PadicNumber root() const;
  // Image of z with relative precision >= prec (guard digits grow on cancellation).
  PadicNumber operator()(const QuadElem& z) const;

 private:
  long D_;
  unsigned long p_;
  long prec_;
  bool negate_;

  Integer root_mod(long k) const;
};

// The two embeddings, sigma1 first; sigma1 uses the lift with r == 1 mod 4
// for p = 2 and the least positive residue mod p otherwise. Throws NotSplit.
std::pair<QuadEmbedding, QuadEmbedding> quad_embeddings(long D, unsigned long p, long prec);

// Hensel lift of sqrt D modulo p^k (defined up to sign; canonical choice above).
Integer sqrt_mod_prime_power(long D, unsigned long p, long k);

}  // namespace heeg
