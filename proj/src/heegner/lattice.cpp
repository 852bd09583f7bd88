#include "heeg/heegner/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "heeg/errors.hpp"

namespace heeg {

namespace {

using cld = std::complex<long double>;

BigFloat bf(const Rational& q, mpfr_prec_t prec) { return BigFloat(q, prec); }

// Roots of x^3 + p x^2 + q x + r by Durand-Kerner in long double.
std::vector<cld> cubic_roots_approx(long double p, long double q, long double r) {
  cld z[3] = {cld(0.4L, 0.9L), cld(0.4L, 0.9L) * cld(0.4L, 0.9L), cld(0.4L, 0.9L) * cld(0.4L, 0.9L) * cld(0.4L, 0.9L)};
  long double scale = std::max({1.0L, std::fabs(p), std::sqrt(std::fabs(q)), std::cbrt(std::fabs(r))});
  for (auto& w : z) w *= scale;
  auto f = [&](cld x) { return ((x + p) * x + q) * x + r; };
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < 3; ++i) {
      cld den = 1;
      for (int j = 0; j < 3; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      z[i] -= f(z[i]) / den;
    }
  }
  return {z[0], z[1], z[2]};
}

struct Cubic {
  BigFloat c2, c1, c0;  // x^3 + c2 x^2 + c1 x + c0
  BigFloat eval(const BigFloat& x) const { return ((x + c2) * x + c1) * x + c0; }
  BigFloat deriv(const BigFloat& x) const { return (3 * x + 2 * c2) * x + c1; }
};

BigFloat newton_root(const Cubic& f, long double guess, mpfr_prec_t prec) {
  BigFloat x = BigFloat::from_double(static_cast<double>(guess), prec);
  BigFloat tol = BigFloat::pow2(8 - static_cast<long>(prec), prec);
  const BigFloat floor = BigFloat::pow2(-static_cast<long>(prec) / 2, prec);
  BigFloat prev = BigFloat::pow2(60, prec);
  for (int it = 0; it < 400; ++it) {
    BigFloat step = f.eval(x) / f.deriv(x);
    x = x - step;
    const BigFloat scale = abs(x) + BigFloat(1, prec);
    // close roots leave rounding noise above tol; stop once steps stall there
    const bool stalled = abs(step) <= floor * scale && 2 * abs(step) >= abs(prev);
    prev = step;
    if (abs(step) <= tol * scale || stalled) {
      // one more step for quadratic convergence margin
      x = x - f.eval(x) / f.deriv(x);
      return x;
    }
  }
  throw PrecisionUnreachable("cubic root refinement did not converge");
}

BigComplex real(const BigFloat& x) { return BigComplex(x, BigFloat(x.prec())); }

// Lattice error allowance from the root refinement and AGM.
ErrBound lattice_slack(const BigComplex& w, mpfr_prec_t prec) {
  return w.center_abs_upper() * ErrBound::pow2(16 - static_cast<long>(prec));
}

BigFloat round_nearest(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_round(r.raw(), x.raw());
  return r;
}

}  // namespace

PeriodLattice period_lattice(const WeierstrassCurve& E, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  // 4x^3 + b2 x^2 + 2 b4 x + b6, made monic
  Cubic f{bf(E.b2() / 4, wp), bf(E.b4() / 2, wp), bf(E.b6() / 4, wp)};
  auto approx = cubic_roots_approx(static_cast<long double>(E.b2().get_d() / 4), static_cast<long double>(E.b4().get_d() / 2),
                                   static_cast<long double>(E.b6().get_d() / 4));
  const BigFloat pi = BigFloat::pi(wp);
  PeriodLattice L;
  L.prec = prec;
  BigComplex w1(wp), w2(wp);
  if (E.disc() > 0) {
    std::vector<BigFloat> e;
    for (auto& z : approx) e.push_back(newton_root(f, z.real(), wp));
    std::sort(e.begin(), e.end(), [](const BigFloat& a, const BigFloat& b) { return a > b; });
    BoundedReal m1 = agm(sqrt(e[0] - e[2]), sqrt(e[0] - e[1]), ErrBound());
    BoundedReal m2 = agm(sqrt(e[0] - e[2]), sqrt(e[1] - e[2]), ErrBound());
    BigFloat r1 = pi / m1.value, r2 = pi / m2.value;
    w1 = real(r1);
    w2 = BigComplex(BigFloat(wp), r2);
    L.realPeriod = r1;
  } else {
    // the real root
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i) {
      if (std::fabs(approx[i].imag()) < std::fabs(approx[k].imag())) k = i;
    }
    BigFloat e1 = newton_root(f, approx[k].real(), wp);
    BigFloat A = 3 * e1 + bf(E.b2() / 4, wp);
    BigFloat B = sqrt(3 * e1 * e1 + bf(E.b2() / 2, wp) * e1 + bf(E.b4() / 2, wp));
    BoundedReal m1 = agm(2 * sqrt(B), sqrt(2 * B + A), ErrBound());
    BoundedReal m2 = agm(2 * sqrt(B), sqrt(2 * B - A), ErrBound());
    BigFloat r1 = 2 * pi / m1.value;
    w1 = real(r1);
    w2 = BigComplex(-(r1 * BigFloat::pow2(-1, wp)), pi / m2.value);
    L.realPeriod = r1;
  }
  // basis with Im(w2 / w1) > 0 reduced to the fundamental domain
  for (int it = 0; it < 1000; ++it) {
    BigComplex tau = w2 / w1;
    if (tau.im().sign() < 0) {
      w2 = -w2;
      continue;
    }
    BigFloat k = round_nearest(tau.re());
    if (!k.is_zero()) {
      w2 = w2 - BigComplex(k, BigFloat(wp)) * w1;
      tau = w2 / w1;
    }
    BigFloat n2 = tau.re() * tau.re() + tau.im() * tau.im();
    if (n2 < BigFloat(1, wp) - BigFloat::pow2(-40, wp)) {
      BigComplex t = w1;
      w1 = w2;
      w2 = -t;
      continue;
    }
    break;
  }
  L.w1 = w1.with_extra_error(lattice_slack(w1, prec));
  L.w2 = w2.with_extra_error(lattice_slack(w2, prec));
  return L;
}

ComplexPoint elliptic_exp(const WeierstrassCurve& E, const PeriodLattice& L, const BigComplex& zIn) {
  const mpfr_prec_t wp = std::max(zIn.prec(), L.w1.prec());
  const BigComplex z = zIn.with_prec(wp);
  const BigComplex tau = L.w2 / L.w1;
  BigComplex w = z / L.w1;
  // w mod (1, tau), |Im w| <= Im tau / 2
  BigFloat t = round_nearest(w.im() / tau.im());
  w = w - BigComplex(t, BigFloat(wp)) * BigComplex(tau.re(), tau.im());
  BigFloat s = round_nearest(w.re());
  w = w - BigComplex(s, BigFloat(wp));
  const BigFloat twoPi = 2 * BigFloat::pi(wp);
  const BigComplex twoPiI(BigFloat(wp), twoPi, twoPi.is_zero() ? ErrBound() : ErrBound::pow2(3 - static_cast<long>(wp)));
  const BigComplex u = exp(twoPiI * w);
  const BigComplex q = exp(twoPiI * tau);
  const BigComplex one = BigComplex::from_rational(1, 0, wp);
  const BigComplex oneMinusU = one - u;
  if (oneMinusU.abs_upper() <= ErrBound::pow2(-static_cast<long>(wp) / 2)) {
    throw NearPole("elliptic_exp: argument is within 2^(-" + std::to_string(wp / 2) + ") of a lattice point");
  }
  const BigComplex uinv = one / u;
  // P = 1/12 + u/(1-u)^2 + sum_n (x/(1-x)^2 + y/(1-y)^2 - 2 q^n/(1-q^n)^2)
  // D = u(1+u)/(1-u)^3 + sum_n (x(1+x)/(1-x)^3 - y(1+y)/(1-y)^3), x = q^n u, y = q^n / u
  BigComplex P = BigComplex::from_rational(Rational(1, 12), 0, wp);
  BigComplex Dv(wp);
  {
    BigComplex d = one / oneMinusU;
    P += u * d * d;
    Dv += u * (one + u) * d * d * d;
  }
  const ErrBound rq = q.abs_upper();
  const ErrBound rootq = rq.sqrt_up();
  const ErrBound target = ErrBound::pow2(-static_cast<long>(wp) - 8);
  BigComplex qn = q;
  ErrBound rn = rq;  // |q|^n
  for (long n = 1;; ++n) {
    BigComplex x = qn * u, y = qn * uinv;
    BigComplex dx = one / (one - x), dy = one / (one - y), dq = one / (one - qn);
    P += x * dx * dx + y * dy * dy - BigComplex(BigFloat(2, wp), BigFloat(wp)) * qn * dq * dq;
    Dv += x * (one + x) * dx * dx * dx - y * (one + y) * dy * dy * dy;
    rn = rn * rq;
    qn = qn * q;
    // terms beyond n are bounded by 4 |q|^(m - 1/2) each
    ErrBound tail = ErrBound(8.0) * rn / (rootq * ErrBound::sub_down(ErrBound(1.0), rq));
    if (tail <= target) {
      P = P.with_extra_error(tail);
      Dv = Dv.with_extra_error(tail);
      break;
    }
    if (n > 100000) throw PrecisionUnreachable("elliptic_exp: q-series did not converge");
  }
  const BigComplex scale = twoPiI / L.w1;
  const BigComplex scale2 = scale * scale;
  const BigComplex wp_ = scale2 * P;
  const BigComplex wpd = scale2 * scale * Dv;
  ComplexPoint out;
  const BigComplex a1 = BigComplex::from_rational(E.a1(), 0, wp), a3 = BigComplex::from_rational(E.a3(), 0, wp);
  out.x = wp_ - BigComplex::from_rational(E.b2() / 12, 0, wp);
  out.y = BigFloat::pow2(-1, wp) * (wpd - a1 * out.x - a3);
  return out;
}

}  // namespace heeg
