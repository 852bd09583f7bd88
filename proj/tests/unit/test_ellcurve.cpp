#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "heeg/ellcurve/count.hpp"
#include "heeg/ellcurve/curve.hpp"
#include "heeg/ellcurve/fp.hpp"
#include "heeg/ellcurve/point.hpp"

using namespace heeg;

namespace {

WeierstrassCurve curve37a1() { return WeierstrassCurve::from_ainvs({0, 0, 1, -1, 0}, "37a1"); }
WeierstrassCurve curve11a1() { return WeierstrassCurve::from_ainvs({0, -1, 1, -10, -20}, "11a1"); }

// PARI's integer coding of Kodaira symbols.
int pari_code(const Kodaira& k) {
  switch (k.type) {
    case Kodaira::I0: return 1;
    case Kodaira::In: return 4 + k.n;
    case Kodaira::II: return 2;
    case Kodaira::III: return 3;
    case Kodaira::IV: return 4;
    case Kodaira::I0s: return -1;
    case Kodaira::Ins: return -4 - k.n;
    case Kodaira::IVs: return -4;
    case Kodaira::IIIs: return -3;
    case Kodaira::IIs: return -2;
  }
  return 0;
}

long count_bruteforce(const WeierstrassCurve& E, long p) {
  long n = 1;
  auto r = [p](const Rational& q) { return static_cast<long>(fp::reduce(q, static_cast<fp::u64>(p))); };
  long a1 = r(E.a1()), a2 = r(E.a2()), a3 = r(E.a3()), a4 = r(E.a4()), a6 = r(E.a6());
  for (long x = 0; x < p; ++x) {
    for (long y = 0; y < p; ++y) {
      long lhs = (y * y + a1 * x * y + a3 * y) % p;
      long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p;
      if (lhs == rhs) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_SUITE("ellcurve") {

TEST_CASE("invariants satisfy c4^3 - c6^2 = 1728 disc") {
  for (int i = 0; i < 100; ++i) {
    Rational a[5];
    for (auto& x : a) x = testgen::rational(50, 6);
    try {
      WeierstrassCurve E(a[0], a[1], a[2], a[3], a[4]);
      CHECK(E.c4() * E.c4() * E.c4() - E.c6() * E.c6() == 1728 * E.disc());
    } catch (const SingularCurve&) {
    }
  }
  CHECK_THROWS_AS(WeierstrassCurve::from_ainvs({0, 0, 0, 0, 0}), SingularCurve);
}

TEST_CASE("group law on 37a1 and 11a1 over K") {
  auto E = curve37a1();
  Model<Rational> M(E);
  RationalPoint P = RationalPoint::affine(0, 0);
  CHECK(on_curve(M, P));
  RationalPoint P5 = scalar_mul(M, 5, P);
  CHECK(P5.x == Rational(1, 4));
  CHECK(P5.y == Rational(-5, 8));
  CHECK(points_equal(point_add(M, P, RationalPoint::at_infinity()), P));
  CHECK(scalar_mul(M, 0, P).infinity);
  CHECK(point_add(M, P, point_neg(M, P)).infinity);

  auto F = curve11a1();
  Model<QuadElem> MK(F, {-7});
  QuadPoint Q = QuadPoint::affine(QuadElem(-7, Rational(1, 2), Rational(-1, 2)), QuadElem(-7, -2, -2));
  CHECK(on_curve(MK, Q));
  QuadPoint Q5 = scalar_mul(MK, 5, Q);
  CHECK(Q5.x == QuadElem(-7, Rational(-3, 4), 0));
  CHECK(Q5.y == QuadElem(-7, Rational(-1, 2), Rational(-11, 8)));
}

TEST_CASE("group law properties on exact points") {
  // 389a1 has rank 2 with generators (-1,1), (0,0)
  auto E = WeierstrassCurve::from_ainvs({0, 1, 1, -2, 0}, "389a1");
  Model<Rational> M(E);
  RationalPoint g1 = RationalPoint::affine(-1, 1), g2 = RationalPoint::affine(0, 0);
  REQUIRE(on_curve(M, g1));
  REQUIRE(on_curve(M, g2));
  for (int i = 0; i < 40; ++i) {
    auto pick = [&] {
      return point_add(M, scalar_mul(M, testgen::uniform(-4, 4), g1), scalar_mul(M, testgen::uniform(-4, 4), g2));
    };
    RationalPoint P = pick(), Q = pick(), R = pick();
    CHECK(on_curve(M, P));
    CHECK(points_equal(point_add(M, P, Q), point_add(M, Q, P)));
    CHECK(points_equal(point_add(M, point_add(M, P, Q), R), point_add(M, P, point_add(M, Q, R))));
  }
  RationalPoint acc = RationalPoint::at_infinity();
  for (long n = 1; n <= 20; ++n) {
    acc = point_add(M, acc, g1);
    CHECK(points_equal(acc, scalar_mul(M, n, g1)));
  }
}

TEST_CASE("count_points and a_ell") {
  CHECK(count_points(curve37a1(), 2) == 5);
  CHECK(a_ell(curve37a1(), 2) == -2);
  CHECK(count_points(curve11a1(), 2) == 5);
  CHECK(a_ell(curve11a1(), 2) == -2);
  CHECK(count_points(curve37a1(), 3) == count_bruteforce(curve37a1(), 3));
  for (auto E : {curve37a1(), curve11a1()}) {
    for (long p : {3L, 5L, 7L, 13L, 17L, 19L, 23L, 29L, 31L, 41L, 43L, 47L, 53L, 97L, 101L}) {
      CHECK(count_points(E, p) == count_bruteforce(E, p));
      long a = a_ell(E, p);
      CHECK(a * a <= 4 * p);
    }
  }
  CHECK(a_ell(curve11a1(), 11) == 1);
  CHECK(a_ell(curve37a1(), 37) == -1);
}

TEST_CASE("nsCount agrees with brute force for ell <= 50") {
  std::vector<WeierstrassCurve> curves = {curve37a1(), curve11a1(),
                                          WeierstrassCurve::from_ainvs({0, 0, 0, -4, 4}, "88a1"),
                                          WeierstrassCurve::from_ainvs({0, 0, 0, -1, 1}, "92b1"),
                                          WeierstrassCurve::from_ainvs({0, 1, 0, 3, -1}, "44a1"),
                                          WeierstrassCurve::from_ainvs({0, 0, 1, 0, -1}, "243a1")};
  for (const auto& E : curves) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
      CHECK_MESSAGE(ns_count(E, p) == ns_count_bruteforce(E, p), E.label() << " at " << p);
    }
  }
}

TEST_CASE("tate_algorithm examples") {
  auto E88 = WeierstrassCurve::from_ainvs({0, 0, 0, -4, 4}, "88a1");
  CHECK(tate_algorithm(E88, 2).tamagawa == 4);
  auto E44 = WeierstrassCurve::from_ainvs({0, 1, 0, 3, -1}, "44a1");
  CHECK(tate_algorithm(E44, 2).tamagawa == 3);
  auto good = tate_algorithm(curve37a1(), 5);
  CHECK(good.kind == ReductionKind::Good);
  CHECK(good.tamagawa == 1);
  CHECK(curve37a1().conductor() == 37);
  CHECK(curve11a1().conductor() == 11);
  CHECK(E88.conductor() == 88);
}

TEST_CASE("Tate, conductor and minimal model against the PARI fixture") {
  std::ifstream in(std::string(HEEG_TEST_DIR) + "/fixtures/local_data.txt");
  REQUIRE(in.good());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, '|')) parts.push_back(part);
    REQUIRE(parts.size() == 4);
    auto E = WeierstrassCurve::parse(parts[0]);
    auto Emin = minimal_model(E);
    CHECK_MESSAGE(Emin.ainvs_string() == WeierstrassCurve::parse(parts[1]).ainvs_string(), line);
    CHECK_MESSAGE(Emin.conductor() == Integer(parts[2].substr(1, parts[2].size() - 2)), line);
    std::stringstream ls(parts[3]);
    std::string item;
    while (ls >> item) {
      long p, f, kod, c;
      REQUIRE(std::sscanf(item.c_str(), "%ld:%ld:%ld:%ld", &p, &f, &kod, &c) == 4);
      ReductionData rd = Emin.reduction(p);
      CHECK_MESSAGE(rd.conductorExponent == f, line << " p=" << p);
      CHECK_MESSAGE(pari_code(rd.kodaira) == kod, line << " p=" << p);
      CHECK_MESSAGE(rd.tamagawa == c, line << " p=" << p);
    }
    ++n;
  }
  CHECK(n == 260);
}

TEST_CASE("minimal_model") {
  auto E = curve37a1();
  CHECK(minimal_model(E) == E);
  // x -> 4x, y -> 8y
  auto scaled = E.change_coords({Rational(1, 2), 0, 0, 0});
  CHECK_FALSE(scaled == E);
  CHECK(minimal_model(scaled) == E);
  auto shifted = E.change_coords({Rational(1, 3), 5, -2, 7});
  CHECK(minimal_model(shifted) == E);
  auto F = minimal_model(curve11a1());
  CHECK(F.disc() == -161051);
  CHECK(valuation(F.disc().get_num(), 11) == 5);
}

TEST_CASE("quadratic_twist") {
  auto E = curve37a1();
  auto T = quadratic_twist(E, -11);
  CHECK(T.conductor() == 4477);
  CHECK(quadratic_twist(E, 1) == E);
  CHECK(quadratic_twist(T, -11) == E);
  for (long d : {-11L, 53L, -71L, 5L, -3L}) {
    auto Td = quadratic_twist(E, d);
    CHECK(quadratic_twist(Td, d) == E);
    int checked = 0;
    for (long l : {3L, 7L, 13L, 17L, 19L, 29L, 41L, 43L, 59L, 61L}) {
      if (d % l == 0) continue;
      CHECK(a_ell(Td, l) == kronecker(Integer(d), Integer(l)) * a_ell(E, l));
      if (++checked == 5) break;
    }
  }
}

}  // TEST_SUITE
