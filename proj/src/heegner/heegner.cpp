#include "heeg/heegner/heegner.hpp"

#include <cmath>

#include "heeg/errors.hpp"
#include "heeg/kernels/qsum.hpp"

namespace heeg {

namespace {

// pi sqrt|D| / A = 2 pi Im(tau)
double decay_rate(const HeegnerTau& tau) {
  return M_PI * std::sqrt(static_cast<double>(-tau.dK)) / tau.form[0].get_d();
}

long guard_bits(const HeegnerTau& tau, std::size_t B) {
  const double rate = decay_rate(tau);
  // 1 - |q| is about rate for small rate
  const double oneMinusR = -std::expm1(-rate);
  return static_cast<long>(std::ceil(2.0 * std::log2(1.0 / oneMinusR) + std::log2(static_cast<double>(B) + 1.0))) + 24;
}

BigComplex complex_value(const QuadElem& a, mpfr_prec_t prec) {
  const BigFloat s = sqrt(BigFloat(-a.disc(), prec));
  BigFloat re(a.u(), prec), im = BigFloat(a.v(), prec) * s;
  return BigComplex(re, im, ErrBound::hypot_up(re, im) * ErrBound::pow2(4 - static_cast<long>(prec)));
}

ErrBound distance(const BigComplex& a, const BigComplex& b) {
  const BigComplex d = a - b;
  return ErrBound::hypot_up(d.re(), d.im()) + d.err();
}

}  // namespace

double tau_imag(const HeegnerTau& tau) { return std::sqrt(static_cast<double>(-tau.dK)) / (2.0 * tau.form[0].get_d()); }

BigComplex tau_to_q(const HeegnerTau& tau, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 16;
  const BigFloat pi = BigFloat::pi(wp);
  const BigFloat A(tau.form[0], wp);
  // 2 pi i tau = -pi sqrt|D| / A - i pi B / A
  BigFloat re = -(pi * sqrt(BigFloat(-tau.dK, wp)) / A);
  BigFloat im = -(pi * BigFloat(tau.form[1], wp) / A);
  ErrBound e = (ErrBound::of_abs(re) + ErrBound::of_abs(im)) * ErrBound::pow2(4 - static_cast<long>(wp));
  return exp(BigComplex(re, im, e)).with_prec(prec);
}

std::size_t terms_for_bits(const HeegnerTau& tau, long bits) {
  const double rate = decay_rate(tau);
  const double oneMinusR = -std::expm1(-rate);
  // 2 r^(B+1) / (1 - r) < 2^-bits
  const double need = (static_cast<double>(bits + 1) * std::log(2.0) - std::log(oneMinusR)) / rate;
  return static_cast<std::size_t>(std::ceil(std::max(need, 1.0)));
}

BigComplex eval_modular_param(CoeffSource& coeffs, const HeegnerTau& tau, long bits, std::size_t cap) {
  if (tau_imag(tau) <= 0) throw std::invalid_argument("eval_modular_param: tau not in the upper half-plane");
  const std::size_t B = terms_for_bits(tau, bits);
  if (B > cap) {
    throw PrecisionUnreachable("eval_modular_param: " + std::to_string(B) + " terms needed for " + std::to_string(bits) +
                               " bits, cap is " + std::to_string(cap));
  }
  const mpfr_prec_t wp = bits + guard_bits(tau, B);
  const BigComplex q = tau_to_q(tau, wp);
  auto f = coeffs.get(B);
  BigComplex z = kernels::modular_qsum_parallel(f->a, B, q);
  return z.with_extra_error(kernels::modular_qsum_tail(B, q.abs_upper()));
}

std::string to_string(PointProvenance p) { return p == PointProvenance::Computed ? "computed" : "ingested"; }

std::optional<Rational> recover_rational(const BigFloat& x, const ErrBound& tol, const Integer& H) {
  const Rational r = x.to_rational();
  const Rational t = tol.to_bigfloat(64).to_rational();
  // convergents h_k / k_k
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational rest = r;
  for (int it = 0; it < 100000; ++it) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > H) return std::nullopt;
    Rational c = make_rational(h2, k2);
    if (abs(r - c) <= t) return c;
    Rational frac = rest - Rational(a);
    if (frac == 0) return std::nullopt;
    rest = 1 / frac;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
  return std::nullopt;
}

HeegnerPointResult recognize_point(const WeierstrassCurve& E, long dK, const ComplexPoint& approx, const Integer& heightBound) {
  if (approx.infinity) {
    HeegnerPointResult r;
    r.point = QuadPoint::at_infinity();
    r.certified = true;
    r.heightBound = heightBound;
    return r;
  }
  const mpfr_prec_t prec = approx.x.prec();
  const ErrBound tol = approx.x.err() + ErrBound::hypot_up(approx.x.re(), approx.x.im()) * ErrBound::pow2(2 - static_cast<long>(prec));
  const BigFloat rootD = sqrt(BigFloat(-dK, prec));
  const ErrBound tolV = (tol + ErrBound::of_abs(approx.x.im()) * ErrBound::pow2(4 - static_cast<long>(prec))) / ErrBound::of_abs(rootD);
  auto u = recover_rational(approx.x.re(), tol, heightBound);
  auto v = recover_rational(approx.x.im() / rootD, tolV, heightBound);
  if (!u || !v) throw RecognitionFailed("x-coordinate not recognized with denominators <= " + heightBound.get_str());
  const QuadElem x(dK, *u, *v);
  const QuadElem a1(dK, E.a1()), a2(dK, E.a2()), a3(dK, E.a3()), a4(dK, E.a4()), a6(dK, E.a6());
  const QuadElem h = a1 * x + a3;
  const QuadElem disc = h * h + QuadElem(dK, 4) * (x * x * x + a2 * x * x + a4 * x + a6);
  auto s = quad_sqrt(disc);
  if (!s) throw RecognitionFailed("recognized x = " + x.to_string() + " has no y in K");
  const QuadElem half(dK, Rational(1, 2));
  const QuadElem yPlus = half * (-h + *s), yMinus = half * (-h - *s);
  const ErrBound dPlus = distance(complex_value(yPlus, prec), approx.y);
  const ErrBound dMinus = distance(complex_value(yMinus, prec), approx.y);
  const QuadElem y = dPlus <= dMinus ? yPlus : yMinus;
  const ErrBound dy = dPlus <= dMinus ? dPlus : dMinus;
  // the exact y must match the approximation to roughly half the working precision
  const ErrBound yTol = approx.y.err() + (ErrBound::hypot_up(approx.y.re(), approx.y.im()) + ErrBound(1.0)) *
                                             ErrBound::pow2(-static_cast<long>(prec) / 2);
  if (!(dy <= yTol)) throw RecognitionFailed("recognized point " + x.to_string() + " does not match the approximate y");
  HeegnerPointResult r;
  r.point = QuadPoint::affine(x, y);
  r.heightBound = heightBound;
  Model<QuadElem> M(E, {dK});
  r.certified = on_curve(M, r.point);
  if (!r.certified) throw RecognitionFailed("recognized point fails the exact curve check");
  return r;
}

HeegnerPointResult heegner_point(const WeierstrassCurve& E, long dK, CoeffSource& coeffs, const HeegnerConfig& cfg,
                                 const std::optional<QuadPoint>& known) {
  if (known) {
    HeegnerPointResult r;
    r.point = *known;
    r.provenance = PointProvenance::Ingested;
    Model<QuadElem> M(E, {dK});
    r.certified = on_curve(M, *known);
    if (!r.certified) throw ValidationError("ingested Heegner point is not on " + E.label());
    return r;
  }
  const std::vector<HeegnerTau> taus = heegner_tau_list(E.conductor(), dK);
  std::string lastFailure = "no attempt";
  for (long bits = cfg.startBits; bits <= cfg.maxBits; bits *= 2) {
    std::size_t B = 0;
    for (const auto& t : taus) B = std::max(B, terms_for_bits(t, bits));
    if (B > cfg.coeffCap) {
      throw PrecisionUnreachable("Heegner point for " + E.label() + " needs " + std::to_string(B) + " terms at " +
                                 std::to_string(bits) + " bits (cap " + std::to_string(cfg.coeffCap) +
                                 "); last failure: " + lastFailure);
    }
    // trace in class-group order
    BigComplex z(bits);
    bool first = true;
    for (const auto& t : taus) {
      BigComplex zt = eval_modular_param(coeffs, t, bits, cfg.coeffCap);
      if (first) {
        z = zt;
        first = false;
      } else {
        z = z.with_prec(std::max(z.prec(), zt.prec())) + zt;
      }
    }
    const PeriodLattice L = period_lattice(E, z.prec());
    // denominators recoverable at this precision
    const Integer H = ErrBound::pow2(bits / 2 - 1).to_bigfloat(64).round_to_integer();
    auto recognize = [&](const BigComplex& w) {
      ComplexPoint approx = elliptic_exp(E, L, w);
      // tolerance at the target precision, not the guarded one
      approx.x = approx.x.with_extra_error(ErrBound::pow2(-bits) * (approx.x.center_abs_upper() + ErrBound(1.0)));
      HeegnerPointResult r = recognize_point(E, dK, approx, H);
      r.complexPrecisionUsed = bits;
      r.terms = B;
      return r;
    };
    for (long c : cfg.multipliers) {
      const BigComplex cz = BigComplex::from_rational(c, 0, z.prec()) * z;
      try {
        HeegnerPointResult r = recognize(cz);
        r.multiplier = c;
        return r;
      } catch (const NearPole& e) {
        if (c != 1) continue;
        HeegnerPointResult r;
        r.point = QuadPoint::at_infinity();
        r.certified = false;
        r.torsionLimit = true;
        r.complexPrecisionUsed = bits;
        r.heightBound = H;
        r.terms = B;
        return r;
      } catch (const RecognitionFailed& e) {
        lastFailure = e.what();
      }
    }
    // a large point may be a multiple of one recognizable at this precision
    Model<QuadElem> M(E, {dK});
    for (long m = 2; m <= cfg.maxDivisor; ++m) {
      const BigComplex inv = BigComplex::from_rational(Rational(1, m), 0, z.prec());
      for (long c : cfg.multipliers) {
        const BigComplex cz = BigComplex::from_rational(c, 0, z.prec()) * z;
        for (long i = 0; i < m; ++i) {
          for (long j = 0; j < m; ++j) {
            const BigComplex w = (cz + BigComplex::from_rational(i, 0, z.prec()) * L.w1 + BigComplex::from_rational(j, 0, z.prec()) * L.w2) * inv;
            try {
              HeegnerPointResult r = recognize(w);
              // m Q is exp(c z) itself; keep that as the point
              r.point = scalar_mul(M, m, r.point);
              if (!on_curve(M, r.point)) continue;
              r.multiplier = c;
              r.divisor = m;
              return r;
            } catch (const NearPole&) {
            } catch (const RecognitionFailed&) {
            }
          }
        }
      }
    }
  }
  throw RecognitionFailed("Heegner point for " + E.label() + " not recognized up to " + std::to_string(cfg.maxBits) +
                          " bits; last failure: " + lastFailure);
}

HeegnerPointResult heegner_point(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg,
                                 const std::optional<QuadPoint>& known) {
  CurveCoeffSource src(E);
  return heegner_point(E, dK, src, cfg, known);
}

}  // namespace heeg
