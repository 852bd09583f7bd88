#include "heeg/exactnum/bigcomplex.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <vector>

#include "heeg/errors.hpp"

namespace heeg {

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Integer& n, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN);
}

BigFloat BigFloat::from_double(double d, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_d(r.v_, d, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_prec(mpfr_prec_t prec) const {
  BigFloat r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

long BigFloat::exponent() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 4;
  return mpfr_get_exp(v_);
}

Integer BigFloat::round_to_integer() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

Integer BigFloat::floor_to_integer() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

Rational BigFloat::to_rational() const {
  if (mpfr_zero_p(v_)) return 0;
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

namespace {

mpfr_prec_t pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(pmax(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(long s, const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_mul_si(r.v_, a.v_, s, MPFR_RNDN);
  return r;
}

#define HEEG_UNARY(name, fn)                   \
  BigFloat name(const BigFloat& x) {           \
    BigFloat r(x.prec());                      \
    fn(r.raw(), x.raw(), MPFR_RNDN);           \
    return r;                                  \
  }

HEEG_UNARY(abs, mpfr_abs)
HEEG_UNARY(sqrt, mpfr_sqrt)
HEEG_UNARY(exp, mpfr_exp)
HEEG_UNARY(log, mpfr_log)
HEEG_UNARY(cos, mpfr_cos)
HEEG_UNARY(sin, mpfr_sin)
#undef HEEG_UNARY

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(pmax(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r(pmax(x, y));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------- ErrBound

namespace {
constexpr mpfr_prec_t kBoundBits = 64;
}

ErrBound::ErrBound(double d) {
  mpfr_init2(v_, kBoundBits);
  mpfr_set_d(v_, d < 0 ? -d : d, MPFR_RNDU);
}

ErrBound::ErrBound(const ErrBound& o) {
  mpfr_init2(v_, kBoundBits);
  mpfr_set(v_, o.v_, MPFR_RNDU);
}

ErrBound& ErrBound::operator=(const ErrBound& o) {
  mpfr_set(v_, o.v_, MPFR_RNDU);
  return *this;
}

ErrBound::~ErrBound() { mpfr_clear(v_); }

ErrBound ErrBound::of_abs(const BigFloat& x) {
  ErrBound r;
  mpfr_abs(r.v_, x.raw(), MPFR_RNDU);
  return r;
}

ErrBound ErrBound::pow2(long e) {
  ErrBound r;
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDU);
  return r;
}

ErrBound ErrBound::hypot_up(const BigFloat& re, const BigFloat& im) {
  ErrBound r;
  mpfr_hypot(r.v_, re.raw(), im.raw(), MPFR_RNDU);
  return r;
}

ErrBound ErrBound::hypot_down(const BigFloat& re, const BigFloat& im) {
  ErrBound r;
  mpfr_hypot(r.v_, re.raw(), im.raw(), MPFR_RNDD);
  return r;
}

ErrBound operator+(const ErrBound& a, const ErrBound& b) {
  ErrBound r;
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDU);
  return r;
}

ErrBound operator*(const ErrBound& a, const ErrBound& b) {
  ErrBound r;
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDU);
  return r;
}

ErrBound operator/(const ErrBound& a, const ErrBound& b) {
  if (b.is_zero()) throw DivisionByZero("error bound divided by zero");
  ErrBound r;
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDU);
  return r;
}

ErrBound ErrBound::expm1_up() const {
  ErrBound r;
  mpfr_expm1(r.v_, v_, MPFR_RNDU);
  return r;
}

ErrBound ErrBound::sqrt_up() const {
  ErrBound r;
  mpfr_sqrt(r.v_, v_, MPFR_RNDU);
  return r;
}

ErrBound ErrBound::sub_down(const ErrBound& x, const ErrBound& y) {
  ErrBound r;
  mpfr_sub(r.v_, x.v_, y.v_, MPFR_RNDD);
  if (mpfr_sgn(r.v_) < 0) mpfr_set_zero(r.v_, 1);
  return r;
}

long ErrBound::log2_ceil() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 4;
  return mpfr_get_exp(v_);
}

BigFloat ErrBound::to_bigfloat(mpfr_prec_t prec) const {
  BigFloat r(prec);
  mpfr_set(r.raw(), v_, MPFR_RNDU);
  return r;
}

ErrBound max(const ErrBound& a, const ErrBound& b) { return a < b ? b : a; }

// ---------------------------------------------------------------- BigComplex

namespace {

ErrBound rounding(const ErrBound& mag, long slackBits, mpfr_prec_t prec) {
  return mag * ErrBound::pow2(slackBits - static_cast<long>(prec));
}

ErrBound hypot_down(const BigFloat& re, const BigFloat& im) { return ErrBound::hypot_down(re, im); }

}  // namespace

BigComplex::BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

BigComplex::BigComplex(BigFloat re, BigFloat im, ErrBound err)
    : re_(std::move(re)), im_(std::move(im)), err_(std::move(err)) {
  if (re_.prec() != im_.prec()) {
    mpfr_prec_t p = std::max(re_.prec(), im_.prec());
    re_ = re_.with_prec(p);
    im_ = im_.with_prec(p);
  }
}

BigComplex BigComplex::from_rational(const Rational& re, const Rational& im, mpfr_prec_t prec) {
  BigFloat r(re, prec), i(im, prec);
  ErrBound e = rounding(ErrBound::of_abs(r) + ErrBound::of_abs(i), 0, prec);
  return BigComplex(std::move(r), std::move(i), e);
}

BigComplex BigComplex::unit_circle(const BigFloat& theta) {
  return BigComplex(cos(theta), sin(theta), ErrBound::pow2(2 - static_cast<long>(theta.prec())));
}

BigComplex BigComplex::with_extra_error(const ErrBound& e) const { return BigComplex(re_, im_, err_ + e); }

BigComplex BigComplex::with_prec(mpfr_prec_t prec) const {
  ErrBound e = err_;
  if (prec < this->prec()) e += rounding(center_abs_upper(), 1, prec);
  return BigComplex(re_.with_prec(prec), im_.with_prec(prec), e);
}

ErrBound BigComplex::center_abs_upper() const { return ErrBound::hypot_up(re_, im_); }

ErrBound BigComplex::abs_upper() const { return center_abs_upper() + err_; }

ErrBound BigComplex::abs_lower() const { return ErrBound::sub_down(hypot_down(re_, im_), err_); }

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  BigComplex r(a.re_ + b.re_, a.im_ + b.im_);
  r.err_ = a.err_ + b.err_ + rounding(r.center_abs_upper(), 1, r.prec());
  return r;
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  BigComplex r(a.re_ - b.re_, a.im_ - b.im_);
  r.err_ = a.err_ + b.err_ + rounding(r.center_abs_upper(), 1, r.prec());
  return r;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex r(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  ErrBound ma = a.center_abs_upper(), mb = b.center_abs_upper();
  r.err_ = ma * b.err_ + mb * a.err_ + a.err_ * b.err_ + rounding(ma * mb, 3, r.prec());
  return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  ErrBound bl = hypot_down(b.re_, b.im_);
  if (!(b.err_ < bl)) throw DivisionByZero("complex division by a value that may vanish");
  BigFloat n2 = b.re_ * b.re_ + b.im_ * b.im_;
  BigComplex r((a.re_ * b.re_ + a.im_ * b.im_) / n2, (a.im_ * b.re_ - a.re_ * b.im_) / n2);
  ErrBound aUp = a.abs_upper();
  ErrBound margin = ErrBound::sub_down(bl, b.err_);
  r.err_ = a.err_ / bl + (aUp * b.err_) / (bl * margin) +
           rounding(a.center_abs_upper() / bl, 5, r.prec());
  return r;
}

BigComplex operator*(const BigFloat& s, const BigComplex& a) {
  BigComplex r(s * a.re_, s * a.im_);
  ErrBound ms = ErrBound::of_abs(s);
  r.err_ = ms * a.err_ + rounding(ms * a.center_abs_upper(), 1, r.prec());
  return r;
}

std::string BigComplex::to_string(int digits) const {
  return re_.to_string(digits) + (im_.sign() < 0 ? " - " : " + ") + abs(im_).to_string(digits) +
         "i (err " + std::to_string(err_.to_double()) + ")";
}

BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.re());
  BigComplex r(m * cos(z.im()), m * sin(z.im()));
  ErrBound mu = ErrBound::of_abs(m) * ErrBound(1.0 + 1e-15);
  ErrBound e = mu * z.err().expm1_up() + rounding(mu, 4, r.prec());
  return r.with_extra_error(e);
}

BigComplex sqrt(const BigComplex& z) {
  mpfr_prec_t prec = z.prec();
  ErrBound zc = z.center_abs_upper();
  BigFloat mod = hypot(z.re(), z.im());
  BigFloat s = sqrt((mod + abs(z.re())) * BigFloat::pow2(-1, prec));
  BigComplex r(prec);
  if (s.is_zero()) {
    r = BigComplex(BigFloat(prec), BigFloat(prec));
  } else if (z.re().sign() >= 0) {
    r = BigComplex(s, z.im() / (2 * s));
  } else {
    BigFloat t = abs(z.im()) / (2 * s);
    r = BigComplex(t, z.im().sign() < 0 ? -s : s);
  }
  ErrBound zl = hypot_down(z.re(), z.im());
  bool awayFromCut = z.re().sign() > 0 || z.err() < ErrBound::of_abs(z.im());
  ErrBound e;
  if (awayFromCut && (z.err() + z.err()) <= zl) {
    e = ErrBound(2.83) * z.err() / zl.sqrt_up();
    // covers the upward rounding of sqrt_up in the denominator
    e = e * ErrBound(1.0 + 1e-12);
  } else {
    e = ErrBound(2.0) * (zc + z.err()).sqrt_up();
  }
  e += rounding(zc.sqrt_up(), 5, prec);
  return r.with_extra_error(e);
}

BigComplex pow(const BigComplex& z, unsigned long n) {
  BigComplex acc(BigFloat(1L, z.prec()), BigFloat(z.prec()));
  BigComplex base = z;
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

BoundedReal agm(const BigFloat& a0, const BigFloat& b0, const ErrBound& inErr) {
  if (a0.sign() <= 0 || b0.sign() <= 0) throw std::domain_error("agm of non-positive reals");
  mpfr_prec_t prec = std::max(a0.prec(), b0.prec());
  BigFloat a = a0.with_prec(prec), b = b0.with_prec(prec);
  BigFloat tol = BigFloat::pow2(2 - static_cast<long>(prec), prec);
  int steps = 0;
  while (abs(a - b) > tol * a) {
    BigFloat an = (a + b) * BigFloat::pow2(-1, prec);
    b = sqrt(a * b);
    a = std::move(an);
    if (++steps > 10000) throw PrecisionUnreachable("agm failed to converge");
  }
  BigFloat hi = a0 > b0 ? a0 : b0, lo = a0 > b0 ? b0 : a0;
  ErrBound ratio = ErrBound::of_abs(hi) / ErrBound::of_abs(lo) * ErrBound(1.0 + 1e-15);
  ErrBound e = ErrBound::of_abs(a - b) + rounding(ErrBound::of_abs(hi) * ErrBound(double(steps + 1)), 3, prec) +
               inErr * ratio;
  return {a, e};
}

}  // namespace heeg
