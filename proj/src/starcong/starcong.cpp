#include "heeg/starcong/starcong.hpp"

#include <cmath>

#include "heeg/ellcurve/count.hpp"
#include "heeg/errors.hpp"
#include "heeg/twotors/twotors.hpp"

namespace heeg {

RationalSeries formal_w(const WeierstrassCurve& E, std::size_t B) {
  const std::size_t n = B + 1;
  std::vector<Rational> w(n, Rational(0)), w2(n, Rational(0)), w3(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 3; i + 3 <= k; ++i) w2[k] += w[i] * w[k - i];
    for (std::size_t i = 3; i + 6 <= k; ++i) w3[k] += w[i] * w2[k - i];
    Rational v = k == 3 ? Rational(1) : Rational(0);
    if (k >= 1) v += E.a1() * w[k - 1];
    if (k >= 2) v += E.a2() * w[k - 2];
    v += E.a3() * w2[k];
    if (k >= 1) v += E.a4() * w2[k - 1];
    v += E.a6() * w3[k];
    w[k] = v;
  }
  return RationalSeries(w, n);
}

RationalSeries formal_omega(const WeierstrassCurve& E, std::size_t B) {
  // u = w / t^3; omega/dt = (2u + t u') / (2u - a1 t u - a3 t^3 u^2)
  const RationalSeries u = formal_w(E, B + 2).shift_down(3);
  const std::size_t n = u.order();
  RationalSeries tu1(n), num(n), den(n);
  for (std::size_t k = 0; k < n; ++k) tu1[k] = Rational(static_cast<long>(k)) * u[k];
  const RationalSeries u2 = u * u;
  for (std::size_t k = 0; k < n; ++k) {
    num[k] = 2 * u[k] + tu1[k];
    Rational d = 2 * u[k];
    if (k >= 1) d -= E.a1() * u[k - 1];
    if (k >= 3) d -= E.a3() * u2[k - 3];
    den[k] = d;
  }
  return num * den.inverse();
}

FormalLogSeries formal_log_series(const WeierstrassCurve& E, std::size_t B) {
  if (B < 1) throw std::invalid_argument("formal_log_series needs B >= 1");
  FormalLogSeries f;
  f.curve = E.label();
  f.coeffs = series_integrate_formal(formal_omega(E, B));
  return f;
}

namespace {

long floor_log(long k, unsigned long p) {
  long r = 0;
  for (unsigned long x = p; x <= static_cast<unsigned long>(k); x *= p) ++r;
  return r;
}

// Terms K with k v - log_p k >= target for all k > K.
std::size_t terms_needed(long v, long target, unsigned long p) {
  long K = 1;
  while ((K + 1) * v - floor_log(K + 1, p) < target) ++K;
  return static_cast<std::size_t>(K);
}

PadicNumber eval_log(const WeierstrassCurve& E, const PadicNumber& t, long target, std::size_t& termsOut) {
  const unsigned long p = t.prime();
  const long v = t.valuation();
  const std::size_t K = terms_needed(v, target, p);
  termsOut = K;
  const FormalLogSeries L = formal_log_series(E, K);
  PadicNumber acc = PadicNumber::exact_zero(p), tk = t;
  for (std::size_t k = 1; k <= K; ++k) {
    const Rational& c = L.coeffs[k];
    if (c != 0) {
      const long cv = valuation(c, p);
      const long need = std::max<long>(1, target - cv - static_cast<long>(k) * v + 4);
      acc += PadicNumber::from_rational(c, p, need) * tk;
    }
    tk *= t;
  }
  return acc.reduce_precision(target);
}

template <class F>
Integer start_multiplier(const WeierstrassCurve& E, unsigned long p, const LogOptions& opt) {
  if (opt.startMultiplier > 0) return opt.startMultiplier;
  const ReductionData rd = E.reduction(static_cast<long>(p));
  return rd.nsCount * rd.tamagawa;
}

PadicNumber divide_by(const PadicNumber& x, long n) {
  if (x.is_exact_zero()) return x;
  return x / PadicNumber::from_integer(n, x.prime(), x.relative_precision() + 64);
}

}  // namespace

LogResult log_omega(const WeierstrassCurve& E, const QuadPoint& P, const QuadEmbedding& emb, const LogOptions& opt) {
  const unsigned long p = emb.prime();
  const long dK = emb.disc();
  LogResult r;
  r.value = PadicNumber::exact_zero(p);
  if (P.infinity) return r;
  const Model<QuadElem> M(E, {dK});
  long n = start_multiplier<QuadElem>(E, p, opt).get_si();
  for (int j = 0; j <= opt.maxDoublings; ++j, n *= 2) {
    const QuadPoint Q = scalar_mul(M, n, P);
    r.multiplier = n;
    if (Q.infinity) return r;  // torsion
    if (Q.y.is_zero()) continue;
    const QuadElem t = -(Q.x / Q.y);
    const long vn = valuation(Integer(n), p);
    // first pass to learn v(t), then the embedding at the precision needed
    QuadEmbedding probe(dK, p, 16, emb.negated());
    const PadicNumber t0 = probe(t);
    if (t0.is_zero() || t0.valuation() < 1) continue;
    const long v = t0.valuation();
    const long target = v + opt.prec + vn + 2;
    QuadEmbedding fine(dK, p, target + 8, emb.negated());
    const PadicNumber tp = fine(t).reduce_precision(target + 8);
    r.tValuation = v;
    r.value = divide_by(eval_log(E, tp, target, r.terms), n);
    r.value = r.value.reduce_precision(r.value.valuation() + opt.prec);
    return r;
  }
  throw MultiplierOverflow("no multiple of the point up to " + std::to_string(n) + " lies in the formal group");
}

LogResult log_omega_rational(const WeierstrassCurve& E, const RationalPoint& P, unsigned long p, const LogOptions& opt) {
  LogResult r;
  r.value = PadicNumber::exact_zero(p);
  if (P.infinity) return r;
  const Model<Rational> M(E);
  long n = start_multiplier<Rational>(E, p, opt).get_si();
  for (int j = 0; j <= opt.maxDoublings; ++j, n *= 2) {
    const RationalPoint Q = scalar_mul(M, n, P);
    r.multiplier = n;
    if (Q.infinity) return r;
    if (Q.y == 0) continue;
    const Rational t = -(Q.x / Q.y);
    const long v = valuation(t, p);
    if (v < 1) continue;
    const long target = v + opt.prec + valuation(Integer(n), p) + 2;
    r.tValuation = v;
    r.value = divide_by(eval_log(E, PadicNumber::from_rational(t, p, target + 8), target, r.terms), n);
    r.value = r.value.reduce_precision(r.value.valuation() + opt.prec);
    return r;
  }
  throw MultiplierOverflow("no multiple of the point up to " + std::to_string(n) + " lies in the formal group");
}

bool is_torsion(const WeierstrassCurve& E, const QuadPoint& P, long dK) {
  if (P.infinity) return true;
  for (const Rational* c : {&P.x.u(), &P.x.v()}) {
    Integer d = c->get_den();
    for (unsigned long q : {2UL, 3UL}) {
      while (mpz_divisible_ui_p(d.get_mpz_t(), q)) d /= q;
    }
    if (d > 1) return false;
  }
  const Model<QuadElem> M(E, {dK});
  QuadPoint Q = P;
  for (int m = 1; m <= 24; ++m) {
    if (Q.infinity) return true;
    Q = point_add(M, Q, P);
  }
  return Q.infinity;
}

StarReport star_from_point(const WeierstrassCurve& E, long dK, const HeegnerPointResult& hp, long prec) {
  StarReport s;
  s.curve = E.label();
  s.dK = dK;
  s.heegnerSource = to_string(hp.provenance);
  s.point = hp.point;
  s.multiplier = hp.multiplier;
  s.nsCount2 = ns_count(E, 2);
  s.precision = prec;
  auto embs = quad_embeddings(dK, 2, prec + 16);
  const QuadEmbedding* list[2] = {&embs.first, &embs.second};
  LogOptions opt;
  opt.prec = prec;
  bool all = true;
  for (int i = 0; i < 2; ++i) {
    PadicNumber lv = log_omega(E, hp.point, *list[i], opt).value;
    lv = divide_by(lv, hp.multiplier);
    s.logValue[i] = lv;
    s.normalized[i] = lv.is_exact_zero() ? lv : lv * PadicNumber::from_integer(s.nsCount2, 2, prec + 64) / PadicNumber::from_integer(2, 2, prec + 64);
    if (!s.normalized[i].is_unit()) all = false;
  }
  s.starHolds = all && !hp.torsionLimit;
  return s;
}

StarReport star_check(const WeierstrassCurve& E, long dK, CoeffSource& coeffs, const HeegnerConfig& cfg,
                      const std::optional<QuadPoint>& known, long prec) {
  (void)analyze_two_torsion(E);
  if (!heegner_hypothesis(dK, E.conductor())) throw std::invalid_argument("Heegner hypothesis fails for " + E.label());
  if (!two_splits(dK)) throw NotSplit("2 does not split in Q(sqrt(" + std::to_string(dK) + "))");
  return star_from_point(E, dK, heegner_point(E, dK, coeffs, cfg, known), prec);
}

PadicNumber euler_factor(const WeierstrassCurve& E, long ell, unsigned long p, long prec) {
  const Integer n = ns_count(E, ell);
  return PadicNumber::from_rational(make_rational(n, Integer(ell)), p, prec);
}

Integer congruence_modulus(const WeierstrassCurve& E, const WeierstrassCurve& Ep, unsigned long p, long m) {
  const Integer N = E.conductor(), Np = Ep.conductor();
  const Integer pm = pow_p(p, static_cast<unsigned long>(m));
  Integer M = 1;
  for (const auto& [ell, e] : factor(gcd(N, Np))) {
    (void)e;
    const long l = ell.get_si();
    if ((Integer(a_ell(E, l)) - a_ell(Ep, l)) % pm != 0) continue;
    M *= pow_p(static_cast<unsigned long>(l), static_cast<unsigned long>(valuation(Integer(N * Np), static_cast<unsigned long>(l))));
  }
  return M;
}

CongruenceReport verify_main_congruence(const CongruencePair& pair, long dK, unsigned long p, long m,
                                        const HeegnerPointResult& P, const HeegnerPointResult& Pp, long prec) {
  const WeierstrassCurve& E = pair.E;
  const WeierstrassCurve& Ep = pair.Ep;
  if (!pair.userFlagged) {
    if (pair.twist == 0 || pair.twist == 1) {
      if (!(minimal_model(E) == minimal_model(Ep))) throw UnsupportedPair("pair is neither a twist pair nor flagged");
    } else {
      if (!(minimal_model(quadratic_twist(E, pair.twist)) == minimal_model(Ep))) {
        throw UnsupportedPair(Ep.label() + " is not the twist of " + E.label() + " by " + std::to_string(pair.twist));
      }
      if (p != 2) throw UnsupportedPair("twist pairs are congruent mod p = 2 only");
      if (m != 1) throw UnsupportedPair("twist pairs are certified for m = 1 only");
    }
  }
  if (!heegner_hypothesis(dK, E.conductor()) || !heegner_hypothesis(dK, Ep.conductor())) {
    throw std::invalid_argument("Heegner hypothesis fails for one of the curves");
  }
  CongruenceReport r;
  r.curveE = E.label();
  r.curveEp = Ep.label();
  r.dK = dK;
  r.p = p;
  r.m = m;
  r.precision = prec;
  r.M = congruence_modulus(E, Ep, p, m);
  const Integer big = Integer(p) * E.conductor() * Ep.conductor() / r.M;
  std::vector<long> ells;
  for (const auto& [ell, e] : factor(big)) {
    (void)e;
    ells.push_back(ell.get_si());
  }
  PadicNumber fE = PadicNumber::from_integer(1, p, prec + 64), fEp = fE;
  for (long ell : ells) {
    PadicNumber a = euler_factor(E, ell, p, prec + 32), b = euler_factor(Ep, ell, p, prec + 32);
    r.eulerE.emplace_back(ell, a);
    r.eulerEp.emplace_back(ell, b);
    fE *= a;
    fEp *= b;
  }
  auto embs = quad_embeddings(dK, p, prec + 16);
  LogOptions opt;
  opt.prec = prec;
  bool plusAll = true, minusAll = true;
  const QuadEmbedding* list[2] = {&embs.first, &embs.second};
  for (int i = 0; i < 2; ++i) {
    PadicNumber lE = divide_by(log_omega(E, P.point, *list[i], opt).value, P.multiplier);
    PadicNumber lEp = divide_by(log_omega(Ep, Pp.point, *list[i], opt).value, Pp.multiplier);
    PadicNumber lhs = lE.is_exact_zero() ? lE : fE * lE;
    PadicNumber rhs = lEp.is_exact_zero() ? lEp : fEp * lEp;
    if (i == 0) {
      r.lhs = lhs;
      r.rhs = rhs;
      const PadicNumber pp = PadicNumber::from_integer(static_cast<long>(p), p, prec + 64);
      r.normalizedE = lE.is_exact_zero() ? lE : PadicNumber::from_integer(ns_count(E, static_cast<long>(p)), p, prec + 64) * lE / pp;
      r.normalizedEp =
          lEp.is_exact_zero() ? lEp : PadicNumber::from_integer(ns_count(Ep, static_cast<long>(p)), p, prec + 64) * lEp / pp;
    }
    plusAll = plusAll && congruent(lhs, rhs, m);
    minusAll = minusAll && congruent(lhs, -rhs, m);
  }
  r.verdict = plusAll || minusAll;
  r.sign = plusAll && minusAll ? "+/-" : plusAll ? "+" : minusAll ? "-" : "none";
  return r;
}

BSDPreconditionReport bsd_preconditions(const WeierstrassCurve& E, long dK, long d, bool maninOdd, std::optional<bool> star) {
  BSDPreconditionReport r;
  r.curve = E.label();
  r.dK = dK;
  r.d = d;
  r.star = star;
  r.maninOddAssumed = maninOdd;
  const WeierstrassCurve T = d == 1 ? E : minimal_model(quadratic_twist(E, d));
  for (long ell : T.bad_primes()) r.tamagawa[ell] = T.reduction(ell).tamagawa;
  r.allTamagawaOdd = true;
  for (const auto& [ell, c] : r.tamagawa) {
    (void)ell;
    if (c % 2 == 0) r.allTamagawaOdd = false;
  }
  const ReductionData r2 = E.reduction(2);
  r.c2Odd = r2.tamagawa % 2 == 1;
  r.additiveAt2 = r2.kind == ReductionKind::Additive;
  r.discSign = E.disc() > 0 ? 1 : -1;
  r.chiDMinusN = kronecker(Integer(d), -E.conductor());
  bool noTwoTorsion = true;
  try {
    (void)analyze_two_torsion(E);
  } catch (const HasRationalTwoTorsion&) {
    noTwoTorsion = false;
    r.notes.push_back("E(Q)[2] is nontrivial");
  }
  const bool heegner = heegner_hypothesis(dK, E.conductor());
  if (!heegner) r.notes.push_back("Heegner hypothesis fails");
  if (d != 1 && noTwoTorsion && heegner && two_splits(dK)) {
    // every prime of |d| must lie in the twist family
    r.twistInN = ((d % 4) + 4) % 4 == 1 && is_squarefree(Integer(std::labs(d)));
    for (const auto& [ell, e] : factor(Integer(std::labs(d)))) {
      (void)e;
      const long l = ell.get_si();
      if (l == 2 || E.conductor() % l == 0 || kronecker(Integer(dK), Integer(l)) != 1 || frobenius_order(E, l) != 3) r.twistInN = false;
    }
    if (!r.twistInN) r.notes.push_back("d is not in the twist family");
  } else if (d != 1) {
    r.twistInN = false;
  }
  const bool manin = !r.additiveAt2 || maninOdd;
  if (!manin) r.notes.push_back("additive at 2 without an odd Manin constant");
  if (!star.has_value()) r.notes.push_back("star not supplied; conclusions assume it");
  const bool starOk = star.value_or(true);
  r.overKApplies = noTwoTorsion && heegner && two_splits(dK) && starOk && r.c2Odd && manin && r.twistInN && r.allTamagawaOdd;
  r.overQApplies = r.overKApplies && r.chiDMinusN == 1;
  if (r.c2Odd && d != 1) {
    const bool byDisc = r.discSign < 0 || d > 0;
    r.rankSideConsistent = byDisc == (r.chiDMinusN == 1);
    if (!r.rankSideConsistent) r.notes.push_back("chi_d(-N) disagrees with the discriminant criterion");
  }
  return r;
}

}  // namespace heeg
