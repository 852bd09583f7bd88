#include "heeg/qexp/qexp.hpp"

#include <algorithm>
#include <cstdlib>

#include "heeg/errors.hpp"
#include "heeg/kernels/aptable.hpp"

namespace heeg {

namespace {

EigenformCoeffs build_from_ap(const WeierstrassCurve& E, std::size_t B, bool parallel, const EigenformCoeffs* prev = nullptr) {
  EigenformCoeffs f;
  f.N = E.conductor();
  f.label = E.label();
  f.a.assign(B + 1, 1);
  if (B == 0) {
    f.a[0] = 0;
    return f;
  }
  f.a[0] = 0;
  const std::vector<std::uint32_t> primes = primes_up_to(static_cast<std::uint32_t>(B));
  // a_p already known from a shorter list are reused
  const std::size_t known = prev ? prev->length() : 0;
  const std::size_t split = static_cast<std::size_t>(std::upper_bound(primes.begin(), primes.end(), known) - primes.begin());
  const std::vector<std::uint32_t> fresh(primes.begin() + static_cast<std::ptrdiff_t>(split), primes.end());
  std::vector<std::int32_t> ap(split);
  for (std::size_t i = 0; i < split; ++i) ap[i] = prev->a[primes[i]];
  const std::vector<std::int32_t> tail =
      parallel ? kernels::ap_table_parallel(E, fresh) : kernels::ap_table_serial(E, fresh);
  ap.insert(ap.end(), tail.begin(), tail.end());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::int64_t p = primes[i];
    const bool bad = f.N % static_cast<unsigned long>(p) == 0;
    // a_{p^k}
    std::vector<std::int64_t> apk{1, ap[i]};
    for (std::int64_t pk = p * p; pk <= static_cast<std::int64_t>(B); pk *= p) {
      std::size_t k = apk.size();
      apk.push_back(bad ? apk[k - 1] * ap[i] : apk[k - 1] * ap[i] - p * apk[k - 2]);
    }
    for (std::size_t n = static_cast<std::size_t>(p); n <= B; n += static_cast<std::size_t>(p)) {
      std::size_t m = n / static_cast<std::size_t>(p), v = 1;
      while (m % static_cast<std::size_t>(p) == 0) {
        m /= static_cast<std::size_t>(p);
        ++v;
      }
      f.a[n] = static_cast<std::int32_t>(static_cast<std::int64_t>(f.a[n]) * apk[v]);
    }
  }
  return f;
}

}  // namespace

EigenformCoeffs anlist(const WeierstrassCurve& E, std::size_t B) { return build_from_ap(E, B, true); }
EigenformCoeffs anlist_serial(const WeierstrassCurve& E, std::size_t B) { return build_from_ap(E, B, false); }
EigenformCoeffs anlist_extend(const WeierstrassCurve& E, const EigenformCoeffs& prev, std::size_t B) {
  return build_from_ap(E, B, true, &prev);
}

EigenformCoeffs twist_coeffs(const EigenformCoeffs& f, long d) {
  if (d == 1) return f;
  if (gcd(Integer(d), f.N) != 1) throw std::invalid_argument("twist_coeffs needs gcd(d, N) = 1");
  const long m = std::labs(d);
  // chi_d(n) = (d / n) has period |d| for a fundamental discriminant d = 1 mod 4
  const bool periodic = ((d % 4) + 4) % 4 == 1;
  std::vector<signed char> chi;
  if (periodic) {
    chi.resize(static_cast<std::size_t>(m));
    for (long r = 0; r < m; ++r) chi[r] = static_cast<signed char>(kronecker(Integer(d), Integer(r)));
  }
  EigenformCoeffs g = f;
  g.N = f.N * d * d;
  g.label = f.label + "^(" + std::to_string(d) + ")";
  for (std::size_t n = 1; n < g.a.size(); ++n) {
    int c = periodic ? chi[n % static_cast<std::size_t>(m)] : kronecker(Integer(d), Integer(static_cast<unsigned long>(n)));
    g.a[n] = static_cast<std::int32_t>(c * f.a[n]);
  }
  return g;
}

std::shared_ptr<const EigenformCoeffs> CurveCoeffSource::get(std::size_t B) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!best_) best_ = std::make_shared<const EigenformCoeffs>(anlist(E_, B));
  else if (best_->length() < B) best_ = std::make_shared<const EigenformCoeffs>(anlist_extend(E_, *best_, B));
  return best_;
}

std::shared_ptr<const EigenformCoeffs> TwistCoeffSource::get(std::size_t B) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!best_ || best_->length() < B) best_ = std::make_shared<const EigenformCoeffs>(twist_coeffs(*base_->get(B), d_));
  return best_;
}

QSeries to_qseries(const EigenformCoeffs& f, std::size_t B) {
  if (f.length() + 1 < B) throw std::invalid_argument("to_qseries: coefficient list too short");
  QSeries s(B);
  for (std::size_t n = 1; n < B; ++n) s[n] = f.a[n];
  return s;
}

PadicSeries to_padic(const QSeries& F, unsigned long p, long prec) {
  PadicSeries s(F.order(), PadicNumber::exact_zero(p));
  for (std::size_t n = 0; n < F.order(); ++n) {
    s[n] = F[n] == 0 ? PadicNumber::exact_zero(p) : PadicNumber::from_rational(F[n], p, prec);
  }
  return s;
}

std::string to_string(StabMode m) {
  switch (m) {
    case StabMode::Plus: return "+";
    case StabMode::Minus: return "-";
    case StabMode::Zero: return "0";
  }
  return "?";
}

namespace {

// Square root of a p-adic unit u modulo p^k by Newton / bit lifting.
std::optional<Integer> unit_sqrt(const Integer& u, unsigned long p, long k) {
  const Integer pk = pow_p(p, static_cast<unsigned long>(k));
  if (p == 2) {
    Integer uu = u % 8;
    if (uu < 0) uu += 8;
    if (uu != 1) return std::nullopt;
    Integer r = 1;
    // r^2 = u mod 2^j, extend one bit at a time
    for (long j = 3; j < k + 1; ++j) {
      Integer mod = pow_p(2, static_cast<unsigned long>(j + 1));
      Integer diff = (r * r - u) % mod;
      if (diff < 0) diff += mod;
      if (diff != 0) r += pow_p(2, static_cast<unsigned long>(j - 1));
    }
    r %= pk;
    return r;
  }
  Integer res = u % p;
  if (res < 0) res += p;
  if (kronecker(res, Integer(p)) != 1) return std::nullopt;
  Integer r = 0;
  for (Integer c = 1; c < p; ++c) {
    if ((c * c - res) % p == 0) {
      r = c;
      break;
    }
  }
  // Newton: r <- r - (r^2 - u) / (2r)
  Integer mod = p;
  while (mod < pk) {
    mod = mod * mod;
    if (mod > pk) mod = pk;
    Integer inv;
    Integer twoR = 2 * r;
    mpz_invert(inv.get_mpz_t(), twoR.get_mpz_t(), mod.get_mpz_t());
    r = (r - (r * r - u) * inv) % mod;
    if (r < 0) r += mod;
  }
  return r;
}

}  // namespace

HeckeRoots hecke_roots(long aEll, long ell, unsigned long p, long prec, int weight) {
  const Integer c = pow_p(static_cast<unsigned long>(ell), static_cast<unsigned long>(weight - 1));
  const Integer disc = Integer(aEll) * aEll - 4 * c;
  if (disc == 0) throw RootsNotInRing("Hecke polynomial has a double root");
  const long v = valuation(disc, p);
  if (v % 2 != 0) throw RootsNotInRing("Hecke polynomial is irreducible over Q_p (odd valuation)");
  const long work = prec + v + 8 + (p == 2 ? 4 : 0);
  const Integer unit = disc / pow_p(p, static_cast<unsigned long>(v));
  auto s = unit_sqrt(unit, p, work);
  if (!s) throw RootsNotInRing("Hecke polynomial is irreducible over Q_p");
  PadicNumber sq = PadicNumber::from_parts(p, v / 2, *s, work - (p == 2 ? 2 : 0));
  PadicNumber a = PadicNumber::from_integer(aEll, p, work);
  PadicNumber two = PadicNumber::from_integer(2, p, work);
  PadicNumber r1 = (a + sq) / two, r2 = (a - sq) / two;
  if (r1.valuation() < 0 || r2.valuation() < 0) throw RootsNotInRing("Hecke roots are not p-integral");
  if (r1.valuation() == r2.valuation()) throw RootsNotInRing("Hecke roots have equal valuation; no unit-root ordering");
  HeckeRoots out;
  if (r1.valuation() < r2.valuation()) {
    out = {r1, r2};
  } else {
    out = {r2, r1};
  }
  out.alpha = out.alpha.reduce_precision(out.alpha.valuation() + prec);
  out.beta = out.beta.reduce_precision(out.beta.valuation() + prec);
  return out;
}

QSeries stabilize(const QSeries& F, const StabilizationStep& s, int weight) {
  if (s.mode != StabMode::Zero) throw RootsNotInRing("modes + and - need the Hecke roots; use the p-adic overload");
  QSeries r = F - Rational(s.aEll) * substitute_power(F, s.ell);
  if (!s.ellDividesN) {
    Rational c = Rational(pow_p(static_cast<unsigned long>(s.ell), static_cast<unsigned long>(weight - 1)));
    r = r + c * substitute_power(F, s.ell * s.ell);
  }
  return r;
}

PadicSeries stabilize(const PadicSeries& F, const StabilizationStep& s, const HeckeRoots* roots, int weight) {
  auto lift = [&](long x) { return lift_integer(x, F.zero()); };
  switch (s.mode) {
    case StabMode::Plus:
    case StabMode::Minus: {
      if (!roots) throw RootsNotInRing("stabilization at " + std::to_string(s.ell) + " needs Hecke roots");
      if (s.ellDividesN) throw std::invalid_argument("modes + and - are for ell not dividing N");
      const PadicNumber& c = s.mode == StabMode::Plus ? roots->beta : roots->alpha;
      return F - c * substitute_power(F, s.ell);
    }
    case StabMode::Zero: {
      PadicSeries r = F - lift(s.aEll) * substitute_power(F, s.ell);
      if (!s.ellDividesN) {
        long c = 1;
        for (int i = 0; i < weight - 1; ++i) c *= s.ell;
        r = r + lift(c) * substitute_power(F, s.ell * s.ell);
      }
      return r;
    }
  }
  return F;
}

StabilizedForm stabilize_chain(const EigenformCoeffs& f, const std::vector<std::pair<long, StabMode>>& ops,
                               unsigned long p, long prec, std::size_t B) {
  StabilizedForm out;
  out.baseLabel = f.label;
  out.series = to_padic(to_qseries(f, B), p, prec);
  for (const auto& [ell, mode] : ops) {
    StabilizationStep step{ell, mode, f[static_cast<std::size_t>(ell)], f.N % ell == 0};
    const HeckeRoots* rp = nullptr;
    if (mode != StabMode::Zero) {
      out.roots.push_back(hecke_roots(step.aEll, ell, p, prec, f.weight));
      rp = &out.roots.back();
    }
    out.series = stabilize(out.series, step, rp, f.weight);
    out.ops.push_back(step);
  }
  return out;
}

DepletedSeries::DepletedSeries(unsigned long p, PadicSeries s) : p_(p), s_(std::move(s)) {
  for (std::size_t n = 0; n < s_.order(); n += p_) {
    if (!s_[n].is_exact_zero()) throw NotDepleted("coefficient at n=" + std::to_string(n) + " is not exactly zero");
  }
}

DepletedSeries deplete(const PadicSeries& F, unsigned long p) {
  PadicSeries s = F;
  for (std::size_t n = 0; n < s.order(); n += p) s[n] = PadicNumber::exact_zero(p);
  return DepletedSeries(p, std::move(s));
}

DepletedSeries theta(const DepletedSeries& F, long j) {
  const unsigned long p = F.prime();
  PadicSeries s = F.series();
  for (std::size_t n = 1; n < s.order(); ++n) {
    if (s[n].is_exact_zero()) continue;
    PadicNumber nn = PadicNumber::from_integer(static_cast<long>(n), p, s[n].relative_precision());
    for (long i = 0; i < std::labs(j); ++i) s[n] = j > 0 ? s[n] * nn : s[n] / nn;
  }
  return DepletedSeries(p, std::move(s));
}

DepletedSeries theta_inverse_depleted(const DepletedSeries& F) { return theta(F, -1); }

QexpCongruence qexp_congruent(const QSeries& F, const QSeries& G, unsigned long p, long m, std::size_t B) {
  if (F.order() < B || G.order() < B) throw std::invalid_argument("qexp_congruent: series shorter than B");
  QexpCongruence r;
  r.checkedTo = static_cast<long>(B);
  for (std::size_t n = 0; n < B; ++n) {
    Rational diff = F[n] - G[n];
    if (diff == 0) continue;
    if (valuation(F[n].get_den(), p) > 0 || valuation(G[n].get_den(), p) > 0) {
      throw std::invalid_argument("qexp_congruent: coefficient is not p-integral");
    }
    if (valuation(diff, p) < m) {
      r.congruent = false;
      r.firstFailure = static_cast<long>(n);
      return r;
    }
  }
  return r;
}

QexpCongruence qexp_congruent(const PadicSeries& F, const PadicSeries& G, unsigned long p, long m, std::size_t B) {
  if (F.order() < B || G.order() < B) throw std::invalid_argument("qexp_congruent: series shorter than B");
  QexpCongruence r;
  r.checkedTo = static_cast<long>(B);
  for (std::size_t n = 0; n < B; ++n) {
    if (F[n].prime() != p && !F[n].is_exact_zero()) throw std::invalid_argument("qexp_congruent: prime mismatch");
    if (!congruent(F[n], G[n], m)) {
      r.congruent = false;
      r.firstFailure = static_cast<long>(n);
      return r;
    }
  }
  return r;
}

}  // namespace heeg
