#include "doctest.h"
#include "gen.hpp"
#include "heeg/ellcurve/count.hpp"
#include "heeg/errors.hpp"
#include "heeg/qexp/qexp.hpp"

using namespace heeg;

namespace {

WeierstrassCurve curve37a1() { return WeierstrassCurve::from_ainvs({0, 0, 1, -1, 0}, "37a1"); }
WeierstrassCurve curve11a1() { return WeierstrassCurve::from_ainvs({0, -1, 1, -10, -20}, "11a1"); }

long gcdl(long a, long b) { return b == 0 ? a : gcdl(b, a % b); }

}  // namespace

TEST_SUITE("qexp") {

TEST_CASE("anlist leading coefficients") {
  auto f = anlist(curve37a1(), 20);
  std::vector<std::int32_t> e37 = {0, 1, -2, -3, 2, -2, 6, -1, 0, 6, 4, -5, -6, -2, 2, 6, -4, 0, -12, 0, -4};
  CHECK(f.a == e37);
  auto g = anlist(curve11a1(), 20);
  std::vector<std::int32_t> e11 = {0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4, 4, -1, -4, -2, 4, 0, 2};
  CHECK(g.a == e11);
  CHECK(f[4] == 2);
  CHECK(f.N == 37);
}

TEST_CASE("anlist satisfies the Hecke relations") {
  for (const auto& E : {curve37a1(), curve11a1(), WeierstrassCurve::from_ainvs({0, 0, 1, -7, 6}, "5077a1")}) {
    const std::size_t B = 30000;
    auto f = anlist(E, B);
    CHECK(f.a == anlist_serial(E, B).a);
    for (auto p : primes_up_to(3000)) CHECK(f[p] == a_ell(E, p));
    for (int t = 0; t < 2000; ++t) {
      long m = testgen::uniform(1, 170), n = testgen::uniform(1, 170);
      if (gcdl(m, n) != 1) continue;
      CHECK(f[m * n] == f[m] * f[n]);
    }
    for (auto p : primes_up_to(170)) {
      long pl = p;
      long expect = f.N % pl == 0 ? f[p] * f[p] : f[p] * f[p] - pl;
      CHECK(f[pl * pl] == expect);
    }
  }
}

TEST_CASE("twisted coefficients match point counts on the twist model") {
  auto E = curve37a1();
  auto f = anlist(E, 1000);
  for (long d : {-11L, -3L, 5L, -71L, 53L, -4L, 8L}) {
    auto T = minimal_model(quadratic_twist(E, d));
    auto g = twist_coeffs(f, d);
    CHECK(g.N == T.conductor());
    CHECK(g.a == anlist(T, 1000).a);
  }
  CHECK_THROWS_AS(twist_coeffs(f, -37 * 4), std::invalid_argument);
}

TEST_CASE("coefficient sources grow and share the base table") {
  auto base = std::make_shared<CurveCoeffSource>(curve37a1());
  TwistCoeffSource tw(base, -11);
  auto small = tw.get(100);
  auto big = tw.get(500);
  CHECK(big->length() == 500);
  CHECK(tw.get(200) == big);
  CHECK(base->get(300)->length() == 500);
  CHECK(small->a[13] == kronecker(-11, 13) * base->get(1)->a[13]);
}

TEST_CASE("extending a list matches a fresh one") {
  auto E = curve37a1();
  auto short_ = anlist(E, 3000);
  CHECK(anlist_extend(E, short_, 20000).a == anlist(E, 20000).a);
  CHECK(anlist_extend(E, short_, 1000).a == anlist(E, 1000).a);
}

TEST_CASE("mode 0 stabilization depletes") {
  auto f = anlist(curve37a1(), 600);
  QSeries F = to_qseries(f, 600);
  for (long ell : {2L, 3L, 5L, 37L}) {
    StabilizationStep st{ell, StabMode::Zero, f[ell], f.N % ell == 0};
    QSeries G = stabilize(F, st);
    for (std::size_t n = 1; n < 600; ++n) {
      if (n % ell == 0) {
        CHECK(G[n] == 0);
      } else {
        CHECK(G[n] == F[n]);
      }
    }
  }
  StabilizationStep plus{3, StabMode::Plus, f[3], false};
  CHECK_THROWS_AS(stabilize(F, plus), RootsNotInRing);
}

TEST_CASE("stabilizations commute") {
  auto f = anlist(curve11a1(), 800);
  QSeries F = to_qseries(f, 800);
  for (int t = 0; t < 10; ++t) {
    std::vector<long> ells = {2, 3, 5, 7, 11, 13};
    long l1 = ells[testgen::uniform(0, 5)], l2 = ells[testgen::uniform(0, 5)];
    StabilizationStep s1{l1, StabMode::Zero, f[l1], f.N % l1 == 0}, s2{l2, StabMode::Zero, f[l2], f.N % l2 == 0};
    CHECK(stabilize(stabilize(F, s1), s2) == stabilize(stabilize(F, s2), s1));
  }
}

TEST_CASE("hecke_roots and +/- stabilization") {
  // 37a1 at 5: X^2 + 2X + 5
  HeckeRoots r = hecke_roots(-2, 5, 5, 20);
  CHECK(r.alpha.valuation() == 0);
  CHECK(r.beta.valuation() == 1);
  PadicNumber s = r.alpha + r.beta, pr = r.alpha * r.beta;
  CHECK(congruent(s, PadicNumber::from_integer(-2, 5, 30), 18));
  CHECK(congruent(pr, PadicNumber::from_integer(5, 5, 30), 18));
  CHECK_THROWS_AS(hecke_roots(-3, 3, 3, 20), RootsNotInRing);  // 37a1 at 3: disc -3
  CHECK_THROWS_AS(hecke_roots(0, 2, 2, 20), RootsNotInRing);
  HeckeRoots r11 = hecke_roots(-1, 3, 3, 20);  // 11a1 at 3: X^2 + X + 3, disc -11 = 1 mod 3
  CHECK(r11.alpha.valuation() == 0);

  auto f = anlist(curve37a1(), 400);
  for (StabMode mode : {StabMode::Plus, StabMode::Minus}) {
    StabilizedForm g = stabilize_chain(f, {{5, mode}}, 5, 20, 400);
    const PadicNumber& ev = mode == StabMode::Plus ? g.roots[0].alpha : g.roots[0].beta;
    // U_5 eigenvector: c(5n) = ev * c(n)
    for (std::size_t n = 1; 5 * n < 400; ++n) CHECK(congruent(g.series[5 * n], ev * g.series[n], 15));
  }
}

TEST_CASE("stabilized 37a1 and its -11 twist agree mod 2") {
  const std::size_t B = 500;
  auto f = anlist(curve37a1(), B);
  auto g = twist_coeffs(f, -11);
  auto F = stabilize_chain(f, {{2, StabMode::Zero}, {11, StabMode::Zero}}, 2, 10, B);
  auto G = stabilize_chain(g, {{2, StabMode::Zero}, {11, StabMode::Zero}}, 2, 10, B);
  CHECK(G.ops[1].ellDividesN);
  CHECK_FALSE(F.ops[1].ellDividesN);
  auto c = qexp_congruent(F.series, G.series, 2, 1, B);
  CHECK(c.congruent);
  CHECK(c.checkedTo == static_cast<long>(B));
  // without the stabilization at 11 they differ at n = 11
  auto F2 = to_qseries(f, B), G2 = to_qseries(g, B);
  auto c2 = qexp_congruent(F2, G2, 2, 2, B);
  CHECK_FALSE(c2.congruent);
}

TEST_CASE("qexp_congruent reports the first failing index") {
  QSeries a(10), b(10);
  for (std::size_t n = 0; n < 10; ++n) {
    a[n] = static_cast<long>(n);
    b[n] = static_cast<long>(n);
  }
  b[6] += 1;
  b[8] += 2;
  b[4] += 3;
  auto r = qexp_congruent(a, b, 3, 1, 10);
  CHECK_FALSE(r.congruent);
  CHECK(r.firstFailure == 6);
  CHECK(qexp_congruent(a, b, 3, 1, 6).congruent);
  b[2] = make_rational(1, 3);
  CHECK_THROWS_AS(qexp_congruent(a, b, 3, 1, 10), std::invalid_argument);
}

TEST_CASE("theta on depleted series") {
  auto f = anlist(curve11a1(), 300);
  PadicSeries F = to_padic(to_qseries(f, 300), 3, 20);
  CHECK_THROWS_AS(DepletedSeries(3, F), NotDepleted);
  DepletedSeries D = deplete(F, 3);
  DepletedSeries back = theta(theta_inverse_depleted(D), 1);
  for (std::size_t n = 0; n < 300; ++n) {
    if (D.series()[n].is_exact_zero()) {
      CHECK(back.series()[n].is_exact_zero());
    } else {
      CHECK(congruent(back.series()[n], D.series()[n], 19));
    }
  }
  auto T2 = theta(to_qseries(f, 50), 2);
  CHECK(T2[7] == 49 * f[7]);
}

}  // TEST_SUITE
