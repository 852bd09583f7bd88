#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "heeg/ellcurve/count.hpp"
#include "heeg/starcong/starcong.hpp"
#include "heeg/twotors/twotors.hpp"

using namespace heeg;

namespace {

WeierstrassCurve curve37a1() { return WeierstrassCurve::from_ainvs({0, 0, 1, -1, 0}, "37a1"); }
WeierstrassCurve curve11a1() { return WeierstrassCurve::from_ainvs({0, -1, 1, -10, -20}, "11a1"); }

// Sum of 2^e, as printed by PARI.
Integer bits(std::initializer_list<unsigned> es) {
  Integer n = 0;
  for (unsigned e : es) n += pow_p(2, e);
  return n;
}

// x == n mod 2^k, with x known to at least that absolute precision.
bool matches(const PadicNumber& x, const Integer& n, long k) {
  if (x.absolute_precision() < k) return false;
  return congruent(x, PadicNumber::from_integer(n, 2, k + 8), k);
}

QuadPoint heegner11() {
  return QuadPoint::affine(QuadElem(-7, Rational(1, 2), Rational(-1, 2)), QuadElem(-7, -2, -2));
}

HeegnerPointResult as_result(const QuadPoint& P) {
  HeegnerPointResult r;
  r.point = P;
  r.provenance = PointProvenance::Ingested;
  r.certified = true;
  return r;
}

}  // namespace

TEST_SUITE("starcong") {

TEST_CASE("formal log series") {
  auto L = formal_log_series(curve37a1(), 9).coeffs;
  std::vector<Rational> want37 = {0, 1, 0, 0, Rational(1, 2), Rational(-2, 5), 0, Rational(6, 7), Rational(-3, 2), Rational(2, 3)};
  REQUIRE(L.order() == 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK_MESSAGE(L[k] == want37[k], k);
  auto M = formal_log_series(curve11a1(), 9).coeffs;
  std::vector<Rational> want11 = {0, 1, 0, Rational(-1, 3), Rational(1, 2), Rational(-19, 5), -1, Rational(5, 7), Rational(-27, 2), Rational(691, 9)};
  for (std::size_t k = 0; k < 10; ++k) CHECK_MESSAGE(M[k] == want11[k], k);
  // w = t^3 + a1 t^4 + ...
  auto w = formal_w(curve11a1(), 6);
  CHECK(w[3] == 1);
  CHECK(w[4] == 0);
  CHECK(w[5] == -1);
}

TEST_CASE("log of 37a1 generator") {
  auto E = curve37a1();
  LogOptions opt;
  opt.prec = 30;
  auto r = log_omega_rational(E, RationalPoint::affine(0, 0), 2, opt);
  CHECK(r.multiplier == 5);
  CHECK(r.tValuation == 1);
  // log(5P) from PARI's ellpadiclog
  const Integer want = bits({1, 5, 6, 8, 9, 11, 12, 16, 17, 18, 22, 24, 25, 27, 29});
  PadicNumber five = r.value * PadicNumber::from_integer(5, 2, 60);
  CHECK(matches(five, want, 30));
}

TEST_CASE("log of the 11a1 Heegner point under both embeddings") {
  auto E = curve11a1();
  auto embs = quad_embeddings(-7, 2, 60);
  LogOptions opt;
  opt.prec = 40;
  auto a = log_omega(E, heegner11(), embs.first, opt);
  auto b = log_omega(E, heegner11(), embs.second, opt);
  CHECK(a.multiplier == 5);
  CHECK(matches(a.value, bits({1, 2, 4, 7, 11, 13, 17, 18, 19, 20, 23, 24, 27, 30, 33, 34, 36, 38, 39, 40}), 41));
  CHECK(matches(b.value, bits({1, 3, 5, 6, 8, 9, 10, 12, 14, 15, 16, 21, 22, 25, 26, 28, 29, 31, 32, 35, 37}), 41));
}

TEST_CASE("log is a homomorphism on a rank-two curve") {
  auto E = WeierstrassCurve::from_ainvs({0, 1, 1, -2, 0}, "389a1");
  Model<Rational> M(E);
  RationalPoint g1 = RationalPoint::affine(-1, 1), g2 = RationalPoint::affine(0, 0);
  LogOptions opt;
  opt.prec = 24;
  auto L = [&](const RationalPoint& P) { return log_omega_rational(E, P, 2, opt).value; };
  const PadicNumber l1 = L(g1), l2 = L(g2);
  for (int i = 0; i < 100; ++i) {
    long a = testgen::uniform(-3, 3), b = testgen::uniform(-3, 3);
    RationalPoint P = point_add(M, scalar_mul(M, a, g1), scalar_mul(M, b, g2));
    PadicNumber want = PadicNumber::from_integer(a, 2, 64) * l1 + PadicNumber::from_integer(b, 2, 64) * l2;
    PadicNumber got = L(P);
    if (a == 0 && b == 0) {
      CHECK(got.is_exact_zero());
      continue;
    }
    CHECK_MESSAGE(congruent(got, want, 20), a << "," << b);
  }
}

TEST_CASE("log does not depend on the multiplier") {
  auto E = curve11a1();
  auto embs = quad_embeddings(-7, 2, 60);
  LogOptions base;
  base.prec = 30;
  const PadicNumber ref = log_omega(E, heegner11(), embs.first, base).value;
  for (long n : {10L, 15L, 20L, 35L}) {
    LogOptions opt = base;
    opt.startMultiplier = n;
    auto r = log_omega(E, heegner11(), embs.first, opt);
    CHECK(congruent(r.value, ref, 28));
  }
}

TEST_CASE("torsion and sign invariance") {
  auto E = curve11a1();
  Model<QuadElem> M(E, {-7});
  QuadPoint T = QuadPoint::affine(QuadElem(-7, 5, 0), QuadElem(-7, 5, 0));
  REQUIRE(on_curve(M, T));
  CHECK(is_torsion(E, T, -7));
  CHECK_FALSE(is_torsion(E, heegner11(), -7));
  auto embs = quad_embeddings(-7, 2, 60);
  LogOptions opt;
  opt.prec = 30;
  CHECK(log_omega(E, T, embs.first, opt).value.is_exact_zero());
  const PadicNumber l = log_omega(E, heegner11(), embs.first, opt).value;
  const PadicNumber lt = log_omega(E, point_add(M, heegner11(), T), embs.first, opt).value;
  const PadicNumber ln = log_omega(E, point_neg(M, heegner11()), embs.first, opt).value;
  CHECK(congruent(l, lt, 28));
  CHECK(congruent(l, -ln, 28));
}

TEST_CASE("embedding covariance") {
  auto E = curve11a1();
  auto embs = quad_embeddings(-7, 2, 60);
  LogOptions opt;
  opt.prec = 30;
  QuadPoint P = heegner11();
  QuadPoint Pc = QuadPoint::affine(P.x.conj(), P.y.conj());
  CHECK(congruent(log_omega(E, P, embs.second, opt).value, log_omega(E, Pc, embs.first, opt).value, 28));
}

TEST_CASE("star on 37a1 and 11a1") {
  auto s37 = star_from_point(curve37a1(), -7, as_result(QuadPoint::affine(QuadElem(-7, 0, 0), QuadElem(-7, 0, 0))));
  CHECK(s37.starHolds);
  CHECK(s37.nsCount2 == 5);
  auto s11 = star_from_point(curve11a1(), -7, as_result(heegner11()));
  CHECK(s11.starHolds);
  CHECK(s11.normalized[0].is_unit());
  CHECK(s11.normalized[1].is_unit());
  // a point divisible by 2 cannot satisfy it
  Model<QuadElem> M(curve11a1(), {-7});
  auto s2 = star_from_point(curve11a1(), -7, as_result(scalar_mul(M, 2, heegner11())));
  CHECK_FALSE(s2.starHolds);
  // multiplier bookkeeping: 3P with multiplier 3 is P again
  HeegnerPointResult r3 = as_result(scalar_mul(M, 3, heegner11()));
  r3.multiplier = 3;
  auto s3 = star_from_point(curve11a1(), -7, r3);
  CHECK(congruent(s3.logValue[0], s11.logValue[0], 18));
}

TEST_CASE("euler factors and congruence modulus") {
  auto E = curve37a1();
  CHECK(congruent(euler_factor(E, 2, 2, 20), PadicNumber::from_rational(Rational(5, 2), 2, 20), 10));
  auto T = minimal_model(quadratic_twist(E, -11));
  CHECK(congruence_modulus(E, T, 2, 1) == 37 * 37);
  CHECK(congruence_modulus(E, E, 2, 1) == 37 * 37);
}

TEST_CASE("main congruence for small twists of 37a1") {
  auto E = curve37a1();
  HeegnerConfig cfg;
  auto P = heegner_point(E, -7, cfg);
  for (long d : {-11L, 53L}) {
    auto T = minimal_model(quadratic_twist(E, d));
    auto Q = heegner_point(T, -7, cfg);
    REQUIRE(Q.certified);
    CongruencePair pair{E, T, d, false};
    auto rep = verify_main_congruence(pair, -7, 2, 1, P, Q);
    CHECK_MESSAGE(rep.verdict, d);
    CHECK(rep.M == 37 * 37);
    std::vector<long> ells;
    for (auto& [l, f] : rep.eulerE) ells.push_back(l);
    std::vector<long> want = {2};
    for (auto& [l, e] : factor(Integer(std::labs(d)))) want.push_back(l.get_si());
    CHECK(ells == want);
    CHECK_THROWS_AS(verify_main_congruence(pair, -7, 2, 2, P, Q), UnsupportedPair);
    CongruencePair wrong{E, T, d == -11 ? 53 : -11, false};
    CHECK_THROWS_AS(verify_main_congruence(wrong, -7, 2, 1, P, Q), UnsupportedPair);
  }
}

TEST_CASE("BSD preconditions") {
  auto E = curve37a1();
  auto r = bsd_preconditions(E, -7, 1, true, true);
  CHECK(r.c2Odd);
  CHECK(r.overKApplies);
  auto t = bsd_preconditions(E, -7, -11, true, true);
  CHECK(t.twistInN);
  CHECK(t.allTamagawaOdd);
  CHECK(t.overKApplies);
  CHECK(t.rankSideConsistent);
  CHECK(t.chiDMinusN == kronecker(Integer(-11), Integer(-37)));
  auto bad = bsd_preconditions(E, -7, -3, true, true);
  CHECK_FALSE(bad.twistInN);
  CHECK_FALSE(bad.overKApplies);
  auto nostar = bsd_preconditions(E, -7, 1, true, false);
  CHECK_FALSE(nostar.overKApplies);
}

}  // TEST_SUITE
