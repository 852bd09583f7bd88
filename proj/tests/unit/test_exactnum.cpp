#include <cmath>
#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "heeg/errors.hpp"
#include "heeg/exactnum/bigcomplex.hpp"
#include "heeg/exactnum/padic.hpp"
#include "heeg/exactnum/quad.hpp"
#include "heeg/exactnum/rational.hpp"
#include "heeg/exactnum/series.hpp"

using namespace heeg;

TEST_SUITE("exactnum") {

TEST_CASE("rational arithmetic is exact") {
  for (int i = 0; i < 500; ++i) {
    Rational a = testgen::rational(1000000, 1000), b = testgen::rational(1000000, 1000);
    CHECK((a + b) - b == a);
    CHECK(a.get_den() > 0);
    CHECK(gcd(a.get_num(), a.get_den()) == 1);
  }
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("factor and primality") {
  auto f = factor(Integer(-1728));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::make_pair(Integer(2), 6u));
  CHECK(f[1] == std::make_pair(Integer(3), 3u));
  Integer big = Integer("1000000007") * Integer("998244353") * 49;
  auto g = factor(big);
  REQUIRE(g.size() == 3);
  CHECK(g[0].first == 7);
  CHECK(g[0].second == 2);
  for (long n = 1; n < 3000; ++n) {
    bool naive = n > 1;
    for (long d = 2; d * d <= n; ++d) naive = naive && (n % d != 0);
    CHECK(is_prime_u64(static_cast<std::uint64_t>(n)) == naive);
  }
}

TEST_CASE("padic_from_rational examples") {
  auto a = PadicNumber::from_rational(Rational(2, 5), 2, 10);
  CHECK(a.valuation() == 1);
  CHECK(a.relative_precision() == 10);
  CHECK((a.unit() * 5) % 1024 == 1);

  auto z = PadicNumber::from_rational(0, 2, 10);
  CHECK(z.is_exact_zero());

  // modular inverse oracle: unit * 9 == 691 mod 2^8
  auto b = PadicNumber::from_rational(Rational(691, 9), 2, 8);
  CHECK(b.valuation() == 0);
  CHECK((b.unit() * 9 - 691) % 256 == 0);

  auto c = PadicNumber::from_rational(Rational(3, 8), 2, 5);
  CHECK(c.valuation() == -3);
}

TEST_CASE("padic precision propagation") {
  auto x = PadicNumber::from_rational(Rational(7), 2, 12);
  auto y = PadicNumber::from_rational(Rational(3, 5), 2, 5);
  CHECK((x * y).relative_precision() == 5);
  CHECK((x / y).relative_precision() == 5);
  auto s = x + PadicNumber::from_rational(Rational(-7 + 64), 2, 20);
  // 7 + 57 = 64 = 2^6; absolute precision min(12, 20)
  CHECK(s.valuation() == 6);
  CHECK(s.absolute_precision() == 12);
  auto cancel = x - PadicNumber::from_rational(Rational(7), 2, 20);
  CHECK(cancel.is_zero());
  CHECK_FALSE(cancel.is_exact_zero());
  CHECK(cancel.absolute_precision() == 12);
  CHECK_THROWS_AS(congruent(x, y, 6), InsufficientPrecision);
  CHECK(congruent(x, PadicNumber::from_rational(Rational(7 + 4096), 2, 30), 12));
  CHECK_FALSE(congruent(x, PadicNumber::from_rational(Rational(7 + 2048), 2, 30), 12));
  CHECK_THROWS_AS(congruent(cancel, x, 13), InsufficientPrecision);
  CHECK_THROWS_AS(x / cancel, DivisionByZero);
}

TEST_CASE("padic ring laws on random rationals") {
  for (unsigned long p : {2ul, 3ul, 7ul}) {
    for (int i = 0; i < 200; ++i) {
      Rational a = testgen::rational(100000, 500), b = testgen::rational(100000, 500);
      if (a == 0 || b == 0) continue;
      auto pa = PadicNumber::from_rational(a, p, 20), pb = PadicNumber::from_rational(b, p, 20);
      auto sum = PadicNumber::from_rational(a + b, p, 40);
      auto prod = PadicNumber::from_rational(a * b, p, 40);
      auto pr = pa * pb;
      CHECK(pr.valuation() == prod.valuation());
      CHECK(congruent(pr, prod, pr.absolute_precision()));
      auto ps = pa + pb;
      if (!ps.is_zero()) CHECK(congruent(ps, sum, ps.absolute_precision()));
      auto q = pa / pb;
      CHECK(congruent(q * pb, pa, std::min(q.absolute_precision() + pb.valuation(), pa.absolute_precision())));
    }
  }
}

TEST_CASE("Hensel square roots match brute force") {
  for (long D : {-7L, -15L, -23L, -31L, -39L, -47L, 17L, 41L}) {
    for (long k = 1; k <= 10; ++k) {
      Integer r = sqrt_mod_prime_power(D, 2, k);
      long mod = 1L << k, modBig = 1L << (k + 2);
      std::set<long> roots;
      for (long x = 0; x < modBig; ++x) {
        if (((x * x - D) % modBig + modBig) % modBig == 0) roots.insert(x % mod);
      }
      CHECK(roots.count(r.get_si()) == 1);
      if (k >= 2) CHECK(r.get_si() % 4 == 1);
    }
  }
  // sqrt(-7) in Z_2 is +-11 mod 32; the chosen lift is the one == 1 mod 4
  CHECK(sqrt_mod_prime_power(-7, 2, 5) == 21);
  for (long D : {-7L, -11L, -19L}) {
    for (unsigned long p : {11ul, 23ul, 29ul, 37ul}) {
      if (kronecker(Integer(D), Integer(p)) != 1) continue;
      Integer r = sqrt_mod_prime_power(D, p, 6);
      Integer m = pow_p(p, 6);
      CHECK((r * r - D) % m == 0);
    }
  }
}

TEST_CASE("quad_embeddings") {
  CHECK_THROWS_AS(quad_embeddings(-11, 2, 10), NotSplit);
  CHECK_THROWS_AS(quad_embeddings(-7, 3, 10), NotSplit);
  auto [s1, s2] = quad_embeddings(-7, 2, 20);
  // (2) = ((1 - sqrt-7)/2)((1 + sqrt-7)/2); each embedding makes one factor a uniformizer
  QuadElem f1(-7, Rational(1, 2), Rational(-1, 2)), f2(-7, Rational(1, 2), Rational(1, 2));
  CHECK(s1(f1).valuation() + s1(f2).valuation() == 1);
  CHECK(s2(f1).valuation() + s2(f2).valuation() == 1);
  CHECK(s1(f1).valuation() == s2(f2).valuation());
  CHECK(s1(f1).valuation() != s2(f1).valuation());
  for (long D : {-7L, -15L, -23L}) {
    auto [e1, e2] = quad_embeddings(D, 2, 24);
    for (int i = 0; i < 200; ++i) {
      QuadElem z(D, testgen::rational(10000, 64), testgen::rational(10000, 64));
      if (z.is_zero()) continue;
      auto a = e1(z), b = e2(z);
      auto n = PadicNumber::from_rational(z.norm(), 2, 60);
      auto t = PadicNumber::from_rational(z.trace(), 2, 60);
      auto prod = a * b;
      CHECK(congruent(prod, n, prod.absolute_precision()));
      auto sum = a + b;
      if (!sum.is_zero()) CHECK(congruent(sum, t, sum.absolute_precision()));
      CHECK(a.relative_precision() >= 24);
    }
  }
}

TEST_CASE("quad field arithmetic and square roots") {
  for (int i = 0; i < 200; ++i) {
    QuadElem a(-7, testgen::rational(1000, 30), testgen::rational(1000, 30));
    QuadElem b(-7, testgen::rational(1000, 30), testgen::rational(1000, 30));
    if (b.is_zero()) continue;
    CHECK((a / b) * b == a);
    CHECK((a * b).norm() == a.norm() * b.norm());
    auto s = quad_sqrt(a * a);
    REQUIRE(s.has_value());
    CHECK((*s == a || *s == -a));
  }
  CHECK_FALSE(quad_sqrt(QuadElem(-7, 2, 0)).has_value());
  CHECK(quad_sqrt(QuadElem(-7, -7, 0)).value() * quad_sqrt(QuadElem(-7, -7, 0)).value() == QuadElem(-7, -7, 0));
  CHECK(is_fundamental_discriminant(-7));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-8));
  CHECK_FALSE(is_fundamental_discriminant(-12));
  CHECK_FALSE(is_fundamental_discriminant(-9));
}

TEST_CASE("series_integrate_formal") {
  RationalSeries one({Rational(1)}, 1);
  auto t = series_integrate_formal(one);
  CHECK(t.order() == 2);
  CHECK(t[1] == 1);
  RationalSeries s(5);
  for (long n = 1; n <= 5; ++n) s[n - 1] = n;
  auto r = series_integrate_formal(s);
  for (long n = 1; n <= 5; ++n) CHECK(r[n] == 1);
  CHECK(r[0] == 0);
  // derivative then integration round-trips a series with zero constant term
  RationalSeries log37(std::vector<Rational>{0, 1, 0, 0, Rational(1, 2), Rational(-2, 5), 0, Rational(6, 7),
                                             Rational(-3, 2), Rational(2, 3)},
                       10);
  CHECK(series_integrate_formal(log37.derivative()) == log37);
}

TEST_CASE("power series inverse and product") {
  for (int i = 0; i < 20; ++i) {
    RationalSeries a(12);
    a[0] = Rational(testgen::uniform(1, 9));
    for (std::size_t n = 1; n < 12; ++n) a[n] = testgen::rational(50, 7);
    auto prod = a * a.inverse();
    CHECK(prod[0] == 1);
    for (std::size_t n = 1; n < 12; ++n) CHECK(prod[n] == 0);
  }
}

namespace {

bool within(const BigComplex& approx, const BigComplex& reference) {
  BigComplex d = approx - reference;
  return d.center_abs_upper() <= approx.err() + reference.err() + ErrBound::pow2(-(long)approx.prec() + 4);
}

}  // namespace

TEST_CASE("BigComplex error bounds cover closed-form identities") {
  for (long bits : {64L, 128L, 512L}) {
    BigFloat pi = BigFloat::pi(bits);
    BigComplex ipi(BigFloat(bits), pi, ErrBound::pow2(1 - bits) * ErrBound(4.0));
    BigComplex one(BigFloat(1L, bits), BigFloat(bits));
    BigComplex z = exp(ipi) + one;
    CHECK(z.center_abs_upper() <= z.err());
    CHECK(z.err() < ErrBound::pow2(20 - bits));

    BigComplex minus1(BigFloat(-1L, bits), BigFloat(bits));
    BigComplex s = sqrt(minus1);
    CHECK(abs(s.re()).to_double() <= s.err().to_double());
    CHECK(std::fabs(s.im().to_double() - 1.0) < 1e-15);
  }
  // random identities checked against 2048-bit references
  for (int i = 0; i < 50; ++i) {
    Rational a = testgen::rational(1000, 97), b = testgen::rational(1000, 89);
    Rational c = testgen::rational(1000, 83), d = testgen::rational(1000, 79);
    auto mk = [&](long bits) {
      BigComplex x = BigComplex::from_rational(a / 100, b / 100, bits);
      BigComplex y = BigComplex::from_rational(c, d, bits);
      if (y.abs_lower().is_zero()) y = y + BigComplex::from_rational(3, 0, bits);
      return exp(x) * y / (y * y + x) + sqrt(y) - pow(x, 5);
    };
    BigComplex lo = mk(100), hi = mk(2048);
    CHECK(within(lo, hi));
  }
  // agm(1, sqrt 2) against a long double loop
  long double la = 1.0L, lb = std::sqrt(2.0L);
  for (int k = 0; k < 20; ++k) {
    long double an = (la + lb) / 2;
    lb = std::sqrt(la * lb);
    la = an;
  }
  auto m = agm(BigFloat(1L, 200), sqrt(BigFloat(2L, 200)), ErrBound(0.0));
  CHECK(std::fabs(m.value.to_double() - static_cast<double>(la)) < 1e-15);
  CHECK(m.err < ErrBound::pow2(-180));
}

}  // TEST_SUITE
