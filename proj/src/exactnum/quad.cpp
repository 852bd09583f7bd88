#include "heeg/exactnum/quad.hpp"

#include <sstream>

#include "heeg/errors.hpp"

namespace heeg {

QuadElem::QuadElem(long D, Rational u, Rational v) : D_(D), u_(std::move(u)), v_(std::move(v)) {}

namespace {

void check_field(const QuadElem& a, const QuadElem& b) {
  // Rationals embedded with the default D are compatible with any field.
  if (a.disc() != b.disc() && !(a.is_rational() || b.is_rational())) {
    throw std::invalid_argument("quadratic elements from different fields");
  }
}

long common_disc(const QuadElem& a, const QuadElem& b) { return a.is_rational() ? b.disc() : a.disc(); }

}  // namespace

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
  check_field(a, b);
  return QuadElem(common_disc(a, b), a.u_ + b.u_, a.v_ + b.v_);
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
  check_field(a, b);
  return QuadElem(common_disc(a, b), a.u_ - b.u_, a.v_ - b.v_);
}

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
  check_field(a, b);
  long D = common_disc(a, b);
  return QuadElem(D, a.u_ * b.u_ + a.v_ * b.v_ * D, a.u_ * b.v_ + a.v_ * b.u_);
}

QuadElem operator/(const QuadElem& a, const QuadElem& b) {
  check_field(a, b);
  Rational n = b.norm();
  if (n == 0) throw DivisionByZero("division by zero in quadratic field");
  QuadElem c = a * b.conj();
  return QuadElem(common_disc(a, b), c.u_ / n, c.v_ / n);
}

QuadElem operator*(const Rational& r, const QuadElem& a) { return QuadElem(a.D_, r * a.u_, r * a.v_); }

bool operator==(const QuadElem& a, const QuadElem& b) {
  if (a.u_ != b.u_ || a.v_ != b.v_) return false;
  return a.v_ == 0 || a.D_ == b.D_;
}

std::string QuadElem::to_string() const {
  std::ostringstream os;
  os << u_.get_str();
  if (v_ != 0) os << (v_ > 0 ? " + " : " - ") << Rational(abs(v_)).get_str() << "*sqrt(" << D_ << ")";
  return os.str();
}

bool is_fundamental_discriminant(long D) {
  if (D == 0 || D == 1) return false;
  long m = D % 4;
  if (m < 0) m += 4;
  if (m == 1) return is_squarefree(Integer(D));
  if (m != 0) return false;
  long q = D / 4;
  long r = q % 4;
  if (r < 0) r += 4;
  return (r == 2 || r == 3) && is_squarefree(Integer(q));
}

std::optional<QuadElem> quad_sqrt(const QuadElem& z) {
  const long D = z.disc();
  if (z.is_zero()) return QuadElem(D);
  if (z.v() == 0) {
    if (auto [s, ok] = rational_sqrt(z.u()); ok) return QuadElem(D, s, 0);
    if (auto [s, ok] = rational_sqrt(z.u() / D); ok) return QuadElem(D, 0, s);
    return std::nullopt;
  }
  // (a + b sqrt D)^2 = z  <=>  a^2 + D b^2 = u, 2ab = v.
  auto [n, ok] = rational_sqrt(z.norm());
  if (!ok) return std::nullopt;
  const Rational cands[2] = {Rational((z.u() + n) / 2), Rational((z.u() - n) / 2)};
  for (const Rational& cand : cands) {
    if (cand == 0) continue;
    if (auto [a, okA] = rational_sqrt(cand); okA) {
      QuadElem w(D, a, z.v() / (2 * a));
      if (w * w == z) return w;
    }
  }
  return std::nullopt;
}

Integer sqrt_mod_prime_power(long D, unsigned long p, long k) {
  if (k < 1) return 0;
  if (p == 2) {
    long r8 = ((D % 8) + 8) % 8;
    if (r8 != 1) throw NotSplit("2 does not split in Q(sqrt(" + std::to_string(D) + "))");
    // Bit lifting: keep r^2 == D mod 2^j for j = 3 .. k + 2.
    Integer r = 1, Dz = D;
    for (long j = 3; j < k + 2; ++j) {
      Integer diff = r * r - Dz;
      if (!mpz_divisible_2exp_p(diff.get_mpz_t(), static_cast<mp_bitcnt_t>(j + 1))) {
        r += pow_p(2, static_cast<unsigned long>(j - 1));
      }
    }
    Integer m = pow_p(2, static_cast<unsigned long>(k));
    if (mpz_fdiv_ui(r.get_mpz_t(), 4) != 1) r = -r;
    Integer out;
    mpz_mod(out.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return out;
  }
  Integer Dz = D;
  if (mpz_divisible_ui_p(Dz.get_mpz_t(), p) || kronecker(Dz, Integer(p)) != 1) {
    throw NotSplit(std::to_string(p) + " does not split in Q(sqrt(" + std::to_string(D) + "))");
  }
  unsigned long dm = mpz_fdiv_ui(Dz.get_mpz_t(), p), r0 = 0;
  if (p > 100000000UL) throw std::invalid_argument("sqrt_mod_prime_power: prime too large");
  for (unsigned long x = 1; x < p; ++x) {
    if ((static_cast<unsigned __int128>(x) * x) % p == dm) {
      r0 = x;
      break;
    }
  }
  Integer r = r0;
  for (long j = 1; j < k;) {
    j = std::min(2 * j, k);
    Integer m = pow_p(p, static_cast<unsigned long>(j));
    Integer inv, twor = 2 * r;
    mpz_invert(inv.get_mpz_t(), twor.get_mpz_t(), m.get_mpz_t());
    r = r - (r * r - Dz) * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

QuadEmbedding::QuadEmbedding(long D, unsigned long p, long prec, bool negate)
    : D_(D), p_(p), prec_(prec), negate_(negate) {
  sqrt_mod_prime_power(D, p, 1);  // throws NotSplit
}

Integer QuadEmbedding::root_mod(long k) const {
  Integer r = sqrt_mod_prime_power(D_, p_, k);
  if (negate_) {
    r = pow_p(p_, static_cast<unsigned long>(k)) - r;
  }
  return r;
}

PadicNumber QuadEmbedding::root() const { return PadicNumber::from_integer(root_mod(prec_), p_, prec_); }

PadicNumber QuadEmbedding::operator()(const QuadElem& z) const {
  if (z.is_zero()) return PadicNumber::exact_zero(p_);
  if (z.v() == 0) return PadicNumber::from_rational(z.u(), p_, prec_);
  long guard = 16;
  while (true) {
    long k = prec_ + guard;
    PadicNumber u = PadicNumber::from_rational(z.u(), p_, k);
    PadicNumber v = PadicNumber::from_rational(z.v(), p_, k);
    PadicNumber r = PadicNumber::from_integer(root_mod(k), p_, k);
    PadicNumber s = (z.u() == 0 ? PadicNumber::exact_zero(p_) : u) + v * r;
    if (s.relative_precision() >= prec_) return s.reduce_precision(s.valuation() + prec_);
    if (guard > (1L << 20)) throw PrecisionLoss("embedding lost all precision to cancellation");
    guard *= 2;
  }
}

std::pair<QuadEmbedding, QuadEmbedding> quad_embeddings(long D, unsigned long p, long prec) {
  return {QuadEmbedding(D, p, prec, false), QuadEmbedding(D, p, prec, true)};
}

}  // namespace heeg
