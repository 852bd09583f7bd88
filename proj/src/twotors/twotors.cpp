#include "heeg/twotors/twotors.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "heeg/ellcurve/fp.hpp"
#include "heeg/errors.hpp"
#include "heeg/kernels/sprimes.hpp"

namespace heeg {

std::string to_string(GaloisType g) { return g == GaloisType::S3 ? "S3" : "C3"; }
std::string to_string(RankSide s) { return s == RankSide::SameAsE ? "same" : "flipped"; }

namespace {

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (const auto& [p, e] : factor(n)) {
    std::size_t k = ds.size();
    Integer pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < k; ++j) ds.push_back(ds[j] * pk);
    }
  }
  return ds;
}

// Whether c0 + c1 x + c2 x^2 + c3 x^3 (c3 != 0) has a rational root.
bool has_rational_root(const std::array<Rational, 4>& c) {
  Integer den = 1;
  for (const auto& x : c) den = lcm(den, Integer(x.get_den()));
  std::array<Integer, 4> z;
  for (int i = 0; i < 4; ++i) z[i] = Integer(c[i] * den);
  if (z[0] == 0) return true;
  for (const Integer& num : divisors(z[0])) {
    for (const Integer& dd : divisors(z[3])) {
      for (int s : {1, -1}) {
        // evaluate dd^3 f(s num / dd)
        Integer x = s * num;
        Integer v = z[3] * x * x * x + z[2] * x * x * dd + z[1] * x * dd * dd + z[0] * dd * dd * dd;
        if (v == 0) return true;
      }
    }
  }
  return false;
}

kernels::SPrimeQuery s_query(const WeierstrassCurve& E, long dK) {
  if (!E.is_integral()) throw std::invalid_argument("S-prime scan needs an integral model");
  return {E.b2().get_num(), E.b4().get_num(), E.b6().get_num(), E.conductor(), dK};
}

void require_twist_preconditions(const WeierstrassCurve& E, long dK) {
  analyze_two_torsion(E);
  if (!heegner_hypothesis(dK, E.conductor())) {
    throw std::invalid_argument("Heegner hypothesis fails for d_K=" + std::to_string(dK));
  }
  if (!two_splits(dK)) throw NotSplit("2 does not split in Q(sqrt " + std::to_string(dK) + ")");
}

}  // namespace

TwoTorsionAnalysis analyze_two_torsion(const WeierstrassCurve& E) {
  TwoTorsionAnalysis out;
  out.cubic = {E.b6(), 2 * E.b4(), E.b2(), Rational(4)};
  const Rational &d = out.cubic[0], &c = out.cubic[1], &b = out.cubic[2], &a = out.cubic[3];
  out.cubicDisc = b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
  if (has_rational_root(out.cubic)) {
    throw HasRationalTwoTorsion("E(Q)[2] is nontrivial for [" + E.ainvs_string() + "]");
  }
  out.discIsSquare = is_square(out.cubicDisc);
  out.galoisType = out.discIsSquare ? GaloisType::C3 : GaloisType::S3;
  return out;
}

int frobenius_order(const WeierstrassCurve& E, long ell) {
  if (ell < 3 || !is_prime(Integer(ell))) throw BadPrime("frobenius_order at " + std::to_string(ell));
  if (E.conductor() % ell == 0 || valuation(E.disc(), static_cast<unsigned long>(ell)) != 0) {
    throw BadPrime("frobenius_order at a bad prime " + std::to_string(ell));
  }
  const fp::u64 p = static_cast<fp::u64>(ell);
  fp::u64 i4 = fp::inv(4, p), i2 = fp::inv(2, p);
  int roots = fp::cubic_root_count(fp::mul(fp::reduce(E.b2(), p), i4, p), fp::mul(fp::reduce(E.b4(), p), i2, p),
                                   fp::mul(fp::reduce(E.b6(), p), i4, p), p);
  if (roots == 0) return 3;
  if (roots == 3) return 1;
  return 2;
}

bool heegner_hypothesis(long dK, const Integer& N) {
  for (const auto& [ell, e] : factor(N)) {
    if (kronecker(Integer(dK), ell) != 1) return false;
  }
  return true;
}

bool two_splits(long dK) { return ((dK % 8) + 8) % 8 == 1; }

long signed_prime(long ell) { return ell % 4 == 1 ? ell : -ell; }

std::vector<long> signed_s_primes(const WeierstrassCurve& E, long dK, long bound) {
  if (bound <= 3) return {};
  std::vector<long> out;
  for (std::uint32_t ell : kernels::s_prime_scan_parallel(s_query(E, dK), static_cast<std::uint32_t>(bound))) {
    out.push_back(signed_prime(ell));
  }
  return out;
}

TwistSet enumerate_twists(const WeierstrassCurve& E, long dK, long X, long maxFactors) {
  require_twist_preconditions(E, dK);
  TwistSet ts;
  ts.curve = E.label();
  ts.dK = dK;
  ts.X = X;
  ts.maxFactors = maxFactors;
  ts.signedPrimes = signed_s_primes(E, dK, X);
  const auto& sp = ts.signedPrimes;
  std::vector<long> stack;
  std::function<void(std::size_t, long, long)> rec = [&](std::size_t start, long absProd, long signedProd) {
    for (std::size_t i = start; i < sp.size(); ++i) {
      long a = std::labs(sp[i]);
      if (absProd > (X - 1) / a) break;
      stack.push_back(sp[i]);
      long d = signedProd * sp[i];
      TwistEntry t{d, stack, rank_side(E, d)};
      ts.twists.push_back(std::move(t));
      if (maxFactors == 0 || static_cast<long>(stack.size()) < maxFactors) rec(i + 1, absProd * a, d);
      stack.pop_back();
    }
  };
  rec(0, 1, 1);
  std::sort(ts.twists.begin(), ts.twists.end(),
            [](const TwistEntry& a, const TwistEntry& b) { return std::labs(a.d) < std::labs(b.d); });
  return ts;
}

std::vector<long> count_twists(const WeierstrassCurve& E, long dK, const std::vector<long>& grid) {
  require_twist_preconditions(E, dK);
  if (grid.empty()) return {};
  const long X = grid.back();
  std::vector<long> ps;
  for (long s : signed_s_primes(E, dK, X)) ps.push_back(std::labs(s));
  std::vector<long> sizes;
  std::function<void(std::size_t, long)> rec = [&](std::size_t start, long prod) {
    for (std::size_t i = start; i < ps.size(); ++i) {
      if (prod > (X - 1) / ps[i]) break;
      sizes.push_back(prod * ps[i]);
      rec(i + 1, prod * ps[i]);
    }
  };
  rec(0, 1);
  std::sort(sizes.begin(), sizes.end());
  std::vector<long> counts;
  for (long x : grid) counts.push_back(std::lower_bound(sizes.begin(), sizes.end(), x) - sizes.begin());
  return counts;
}

RankSide rank_side(const WeierstrassCurve& E, long d) {
  const Integer N = E.conductor();
  const bool byCharacter = kronecker(Integer(d), Integer(-N)) == 1;
  const bool byDisc = E.disc() < 0 || d > 0;
  // the discriminant form is only claimed when c_2(E) is odd
  const bool c2Odd = E.reduction(2).tamagawa % 2 == 1;
  if (c2Odd && byCharacter != byDisc) {
    throw CriterionMismatch("rank_side: chi_d(-N) and the discriminant criterion disagree for d=" +
                            std::to_string(d));
  }
  return byCharacter ? RankSide::SameAsE : RankSide::Flipped;
}

DensityReport s_density(const WeierstrassCurve& E, long dK, long bound) {
  TwoTorsionAnalysis tt = analyze_two_torsion(E);
  DensityReport r;
  const Integer N = E.conductor();
  for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(bound - 1))) {
    if (ell == 2 || N % ell == 0) continue;
    ++r.primes;
  }
  r.hits = static_cast<long>(kernels::s_prime_scan_parallel(s_query(E, dK), static_cast<std::uint32_t>(bound)).size());
  r.frequency = r.primes ? static_cast<double>(r.hits) / static_cast<double>(r.primes) : 0.0;
  r.expected = tt.galoisType == GaloisType::S3 ? 1.0 / 6.0 : 1.0 / 3.0;
  return r;
}

}  // namespace heeg
