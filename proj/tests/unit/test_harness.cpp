#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "heeg/ellcurve/fp.hpp"
#include "heeg/errors.hpp"
#include "heeg/harness/goldfeld.hpp"
#include "heeg/harness/pipeline.hpp"
#include "heeg/harness/report.hpp"
#include "heeg/harness/tables.hpp"

using namespace heeg;
namespace fs = std::filesystem;

namespace {

const std::vector<CurveRecord>& dataset() {
  static const std::vector<CurveRecord> d = load_dataset(default_dataset_path());
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  std::string path;
  TempDir() {
    path = (fs::temp_directory_path() / ("heeg-test-" + std::to_string(::getpid()))).string();
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Independent count of the twist family: squarefree d = 1 mod 4 with every
// prime factor outside 2N, split in K, and the 2-division cubic rootless mod ell.
long brute_family_count(const WeierstrassCurve& E, long dK, long X) {
  const Integer N = E.conductor();
  auto inS = [&](long ell) {
    if (ell == 2 || N % ell == 0 || kronecker(Integer(dK), Integer(ell)) != 1) return false;
    const auto r = [&](const Rational& q) { return static_cast<long>(fp::reduce(q, static_cast<fp::u64>(ell))); };
    const long b2 = r(E.b2()), b4 = r(E.b4()), b6 = r(E.b6());
    for (long x = 0; x < ell; ++x) {
      if (((4 * x % ell * x % ell * x + b2 * x % ell * x + 2 * b4 * x + b6) % ell + ell) % ell == 0) return false;
    }
    return true;
  };
  long count = 0;
  for (long d = -X + 1; d < X; ++d) {
    if (((d % 4) + 4) % 4 != 1 || d == 1) continue;
    long m = std::labs(d);
    bool ok = true;
    for (long ell = 3; ell * ell <= m && ok; ell += 2) {
      if (m % ell) continue;
      m /= ell;
      if (m % ell == 0 || !inS(ell)) ok = false;
    }
    if (ok && m > 1) ok = inS(m);
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("bundled dataset loads and matches Tate's algorithm") {
  const auto& d = dataset();
  CHECK(d.size() == 77);
  const auto& r = find_record(d, "37a1");
  CHECK(r.conductor == 37);
  CHECK(r.curve.reduction(2).tamagawa == 1);
  CHECK(find_record(d, "92b1").curve.reduction(2).tamagawa == 3);
  CHECK_THROWS_AS(find_record(d, "9999z1"), MissingCurve);
}

TEST_CASE("record validation") {
  CHECK_NOTHROW(parse_record("label=37a1 ainvs=0,0,1,-1,0 conductor=37 tamagawa=37:1 galois=S3"));
  CHECK_THROWS_AS(parse_record("label=37a1 ainvs=0,0,1,-1,0 conductor=38"), ValidationError);
  CHECK_THROWS_AS(parse_record("label=11a1 ainvs=0,-1,1,-10,-20 tamagawa=11:1"), ValidationError);
  CHECK_THROWS_AS(parse_record("label=37a1 ainvs=0,0,1,-1,0 galois=C3"), ValidationError);
  CHECK_THROWS_AS(parse_record("label=x ainvs=0,0,0,0,0"), ValidationError);
  CHECK_THROWS_AS(parse_record("label=37a1 ainvs=0,0,1,-1"), ParseError);
  CHECK_THROWS_AS(parse_record("label=37a1 ainvs=0,0,1,-1,0 colour=blue"), ParseError);
  CHECK_THROWS_AS(parse_record("ainvs=0,0,1,-1,0"), ParseError);
  CHECK_THROWS_AS(parse_record("label=37a1 ainvs=0,0,1,-1,0 conductor=abc"), ParseError);
  CHECK_THROWS_AS(parse_record("label=37a1 ainvs=0,0,1,-1,0 heegner=-7:1,0,1,0"), ValidationError);
  try {
    parse_record("label=37a1 ainvs=0,0,1,-1,0 conductor=38", 12);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 12") != std::string::npos);
  }
}

TEST_CASE("a record carrying the printed 11a1 point overrides the computation") {
  auto rec = parse_record("label=11a1 ainvs=0,-1,1,-10,-20 conductor=11 tamagawa=11:5 heegner=-7:1/2,-1/2,-2,-2");
  REQUIRE(rec.known_point(-7).has_value());
  CHECK_FALSE(rec.known_point(-23).has_value());
  auto run = run_star(rec, -7, 20, {}, std::nullopt);
  CHECK(run.point.provenance == PointProvenance::Ingested);
  CHECK(run.star.starHolds);
}

TEST_CASE("result cache round trip and tamper detection") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  auto E = find_record(dataset(), "11a1").curve;
  HeegnerConfig cfg;
  CHECK_FALSE(cache.load_point(E, -7, cfg).has_value());
  HeegnerPointResult r = heegner_point(E, -7, cfg);
  cache.store_point(E, -7, cfg, r);
  auto back = cache.load_point(E, -7, cfg);
  REQUIRE(back.has_value());
  CHECK(points_equal(back->point, r.point));
  CHECK(back->complexPrecisionUsed == r.complexPrecisionUsed);
  // another key misses
  HeegnerConfig other = cfg;
  other.maxBits = 1024;
  CHECK_FALSE(cache.load_point(E, -7, other).has_value());
  // a corrupted entry is ignored
  for (const auto& f : fs::directory_iterator(tmp.path)) {
    std::string s = read_file(f.path().string());
    s[s.size() - 3] = s[s.size() - 3] == '1' ? '2' : '1';
    std::ofstream(f.path()) << s;
  }
  CHECK_FALSE(cache.load_point(E, -7, cfg).has_value());

  auto f = anlist(E, 2000);
  cache.store_alist(E, f);
  auto g = cache.load_alist(E, 1500);
  REQUIRE(g != nullptr);
  CHECK(g->a == f.a);
  CHECK(cache.load_alist(E, 3000) == nullptr);
  CachedCoeffSource src(E, cache);
  CHECK(src.get(1000)->a == f.a);
}

TEST_CASE("cached Heegner points re-verify on load") {
  TempDir tmp;
  ResultCache cache(tmp.path);
  auto E = find_record(dataset(), "37a1").curve;
  CachedCoeffSource src(E, cache);
  auto a = cached_heegner_point(E, -7, src, {}, std::nullopt, cache);
  auto b = cached_heegner_point(E, -7, src, {}, std::nullopt, cache);
  CHECK(points_equal(a.point, b.point));
  // a stored point that is not on the curve is rejected
  HeegnerPointResult bad = a;
  bad.point = QuadPoint::affine(QuadElem(-7, 1, 0), QuadElem(-7, 1, 0));
  cache.store_point(E, -7, {}, bad);
  CHECK_FALSE(cache.load_point(E, -7, {}).has_value());
}

TEST_CASE("goldfeld counts") {
  auto E = find_record(dataset(), "37a1").curve;
  auto none = goldfeld_count(E, -7, 10, 5);
  for (long c : none.counts) CHECK(c == 0);
  auto g = goldfeld_count(E, -7, 1000000, 20);
  CHECK(g.alpha == doctest::Approx(1.0 / 6));
  CHECK(g.status() == "unconditional-count-only");
  for (std::size_t i = 1; i < g.counts.size(); ++i) CHECK(g.counts[i] >= g.counts[i - 1]);
  CHECK(g.maxRelDeviation <= 0.10);
  for (const char* label : {"37a1", "11a1"}) {
    auto F = find_record(dataset(), label).curve;
    CHECK_MESSAGE(count_twists(F, -7, {10000})[0] == brute_family_count(F, -7, 10000), label);
  }
}

TEST_CASE("twist lists match the frozen PARI lists") {
  for (const char* label : {"37a1", "11a1"}) {
    auto E = find_record(dataset(), label).curve;
    std::string golden = read_file(std::string(HEEG_TEST_DIR) + "/golden/twists_" + label + "_-7.csv");
    std::ostringstream ours;
    ours << "d,factors\n";
    for (const auto& t : enumerate_twists(E, -7, 5000).twists) {
      ours << t.d << ",";
      for (std::size_t i = 0; i < t.factors.size(); ++i) ours << (i ? " " : "") << t.factors[i];
      ours << "\n";
    }
    CHECK_MESSAGE(ours.str() == golden, label);
  }
}

TEST_CASE("table subset and missing curves") {
  TableOptions opt;
  opt.maxConductor = 150;
  auto rep = reproduce_table(1, dataset(), opt);
  CHECK(rep.rows.size() == 14);
  CHECK(rep.agrees());
  bool saw92b1 = false;
  for (const auto& row : rep.rows) {
    if (row.printed.label != "92b1") continue;
    saw92b1 = true;
    CHECK(row.dK == -7);
    CHECK(row.c2 == 3);
    CHECK(row.star == std::optional<bool>(true));
  }
  CHECK(saw92b1);
  // byte-identical output for identical input
  CHECK(to_json(rep).dump() == to_json(reproduce_table(1, dataset(), opt)).dump());
  std::vector<CurveRecord> partial(dataset().begin(), dataset().begin() + 5);
  try {
    reproduce_table(1, partial, opt);
    FAIL("expected MissingCurve");
  } catch (const MissingCurve& e) {
    CHECK(std::string(e.what()).find("248c1") != std::string::npos);
  }
  CHECK(smallest_admissible_dk(37) == -7);
  CHECK(smallest_admissible_dk(155) == -79);
  CHECK(smallest_admissible_dk(124) == -15);
}

TEST_CASE("p-adic JSON layout") {
  auto x = PadicNumber::from_rational(Rational(12, 5), 2, 10);
  Json j = to_json(x);
  CHECK(j["valuation"] == 2);
  CHECK(j["precision"] == 10);
  CHECK(j["unit_digits"].size() == 10);
  CHECK(j["unit_digits"][0] == 1);
  CHECK(to_json(PadicNumber::exact_zero(2))["exact_zero"] == true);
}

}  // TEST_SUITE
