#include "heeg/kernels/qsum.hpp"

#include <mpfr.h>
#include <omp.h>

#include "heeg/errors.hpp"

namespace heeg::kernels {

namespace {

// Raw mpfr complex with scratch space, for the hot loop.
struct Raw {
  mpfr_t re, im, t1, t2, t3;
  explicit Raw(mpfr_prec_t p) {
    for (mpfr_ptr x : {re, im, t1, t2, t3}) mpfr_init2(x, p);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  Raw(const Raw&) = delete;
  Raw& operator=(const Raw&) = delete;
  ~Raw() {
    for (mpfr_ptr x : {re, im, t1, t2, t3}) mpfr_clear(x);
  }
  void set(const BigFloat& r, const BigFloat& i) {
    mpfr_set(re, r.raw(), MPFR_RNDN);
    mpfr_set(im, i.raw(), MPFR_RNDN);
  }
  void set(const Raw& o) {
    mpfr_set(re, o.re, MPFR_RNDN);
    mpfr_set(im, o.im, MPFR_RNDN);
  }
  // this *= (qr + i qi)
  void mul(mpfr_srcptr qr, mpfr_srcptr qi) {
    mpfr_mul(t1, re, qr, MPFR_RNDN);
    mpfr_mul(t2, im, qi, MPFR_RNDN);
    mpfr_mul(t3, re, qi, MPFR_RNDN);
    mpfr_mul(im, im, qr, MPFR_RNDN);
    mpfr_add(im, im, t3, MPFR_RNDN);
    mpfr_sub(re, t1, t2, MPFR_RNDN);
  }
  // acc += this * a / n
  void accumulate(Raw& acc, long a, unsigned long n) {
    mpfr_mul_si(t1, re, a, MPFR_RNDN);
    mpfr_div_ui(t1, t1, n, MPFR_RNDN);
    mpfr_add(acc.re, acc.re, t1, MPFR_RNDN);
    mpfr_mul_si(t1, im, a, MPFR_RNDN);
    mpfr_div_ui(t1, t1, n, MPFR_RNDN);
    mpfr_add(acc.im, acc.im, t1, MPFR_RNDN);
  }
};

void pow_into(Raw& out, const Raw& q, std::size_t e, mpfr_prec_t prec) {
  Raw base(prec), tmp(prec);
  base.set(q);
  mpfr_set_ui(out.re, 1, MPFR_RNDN);
  mpfr_set_zero(out.im, 1);
  while (e) {
    if (e & 1) out.mul(base.re, base.im);
    e >>= 1;
    if (e) {
      tmp.set(base);
      base.mul(tmp.re, tmp.im);
    }
  }
}

// Sum of terms n in [n0, n1) into acc.
void block_sum(const std::vector<std::int32_t>& a, std::size_t n0, std::size_t n1, const Raw& q, Raw& acc,
               mpfr_prec_t prec) {
  Raw pw(prec);
  pow_into(pw, q, n0, prec);
  for (std::size_t n = n0; n < n1; ++n) {
    if (a[n] != 0) pw.accumulate(acc, a[n], n);
    if (n + 1 < n1) pw.mul(q.re, q.im);
  }
}

ErrBound error_bound(std::size_t B, const BigComplex& q) {
  const long P = static_cast<long>(q.prec());
  const ErrBound u = ErrBound::pow2(-P);
  const ErrBound r = q.abs_upper();
  const ErrBound rl = q.abs_lower();
  if (!(r < ErrBound(1.0))) throw PrecisionLoss("modular q-sum needs |q| < 1");
  if (rl.is_zero()) throw PrecisionLoss("modular q-sum: q indistinguishable from 0");
  const ErrBound eta = ErrBound(8.0) * u + q.err() / rl;
  if (!(ErrBound(static_cast<double>(B)) * eta <= ErrBound(0.5))) {
    throw PrecisionLoss("modular q-sum: precision too low for " + std::to_string(B) + " terms");
  }
  const ErrBound oneMinus = ErrBound::sub_down(ErrBound(1.0), r);
  const ErrBound geo = r / oneMinus;  // sum r^n
  const ErrBound geo2 = r / (oneMinus * oneMinus);  // sum n r^n
  ErrBound e = ErrBound(4.0) * eta * geo2 + ErrBound(10.0) * u * geo;
  e += ErrBound(4.0) * ErrBound(static_cast<double>(B)) * u * geo;
  return e;
}

BigComplex finish(const Raw& acc, mpfr_prec_t prec, const ErrBound& err) {
  BigFloat re(prec), im(prec);
  mpfr_set(re.raw(), acc.re, MPFR_RNDN);
  mpfr_set(im.raw(), acc.im, MPFR_RNDN);
  return BigComplex(std::move(re), std::move(im), err);
}

void check_input(const std::vector<std::int32_t>& a, std::size_t B) {
  if (a.size() <= B) throw std::invalid_argument("modular q-sum: coefficient list shorter than B");
}

}  // namespace

BigComplex modular_qsum_serial(const std::vector<std::int32_t>& a, std::size_t B, const BigComplex& q) {
  check_input(a, B);
  const mpfr_prec_t prec = q.prec();
  const ErrBound err = error_bound(B, q);
  Raw qq(prec), acc(prec), pw(prec);
  qq.set(q.re(), q.im());
  pw.set(qq);
  for (std::size_t n = 1; n <= B; ++n) {
    if (a[n] != 0) pw.accumulate(acc, a[n], n);
    if (n < B) pw.mul(qq.re, qq.im);
  }
  return finish(acc, prec, err);
}

BigComplex modular_qsum_parallel(const std::vector<std::int32_t>& a, std::size_t B, const BigComplex& q) {
  check_input(a, B);
  const mpfr_prec_t prec = q.prec();
  const ErrBound err = error_bound(B, q);
  Raw qq(prec);
  qq.set(q.re(), q.im());
  const long blocks = static_cast<long>((B + kQSumBlock) / kQSumBlock);
  std::vector<BigFloat> partRe(blocks, BigFloat(prec)), partIm(blocks, BigFloat(prec));
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < blocks; ++b) {
    std::size_t n0 = std::max<std::size_t>(1, static_cast<std::size_t>(b) * kQSumBlock);
    std::size_t n1 = std::min(B + 1, static_cast<std::size_t>(b + 1) * kQSumBlock);
    Raw acc(prec);
    if (n0 < n1) block_sum(a, n0, n1, qq, acc, prec);
    mpfr_set(partRe[b].raw(), acc.re, MPFR_RNDN);
    mpfr_set(partIm[b].raw(), acc.im, MPFR_RNDN);
  }
  Raw acc(prec);
  for (long b = 0; b < blocks; ++b) {
    mpfr_add(acc.re, acc.re, partRe[b].raw(), MPFR_RNDN);
    mpfr_add(acc.im, acc.im, partIm[b].raw(), MPFR_RNDN);
  }
  return finish(acc, prec, err);
}

ErrBound modular_qsum_tail(std::size_t B, const ErrBound& absQ) {
  // 2 r^(B+1) / (1 - r)
  ErrBound rp(1.0);
  ErrBound base = absQ;
  std::size_t e = B + 1;
  while (e) {
    if (e & 1) rp = rp * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return ErrBound(2.0) * rp / ErrBound::sub_down(ErrBound(1.0), absQ);
}

}  // namespace heeg::kernels
