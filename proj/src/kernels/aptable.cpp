#include "heeg/kernels/aptable.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iterator>

#include "heeg/ellcurve/count.hpp"
#include "heeg/ellcurve/fp.hpp"
#include "heeg/errors.hpp"

namespace heeg::kernels {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Arithmetic for p < 2^31, where products fit in 64 bits.
struct Field {
  u64 p;
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 add(u64 a, u64 b) const { return a + b >= p ? a + b - p : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 inv(u64 a) const {
    i64 t = 0, nt = 1;
    std::uint32_t r = static_cast<std::uint32_t>(p), nr = static_cast<std::uint32_t>(a);
    while (nr != 0) {
      const std::uint32_t q = r / nr;
      const i64 tmp = t - static_cast<i64>(q) * nt;
      t = nt;
      nt = tmp;
      const std::uint32_t rr = r - q * nr;
      r = nr;
      nr = rr;
    }
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(p) : t);
  }
};

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
};

struct Curve {
  Field F;
  u64 A, B;

  Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, P.y == 0 ? 0 : F.p - P.y, false}; }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
      if (F.add(P.y, Q.y) == 0) return {};
      u64 num = F.add(F.mul(3, F.mul(P.x, P.x)), A);
      lam = F.mul(num, F.inv(F.mul(2, P.y)));
    } else {
      lam = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    }
    u64 x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x);
    u64 y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y);
    return {x3, y3, false};
  }

  Pt mul(u64 n, Pt P) const {
    Pt acc;
    while (n) {
      if (n & 1) acc = add(acc, P);
      n >>= 1;
      if (n) P = add(P, P);
    }
    return acc;
  }

  u64 rhs(u64 x) const { return F.add(F.mul(F.add(F.mul(x, x), A), x), B); }
};

// Every m in [lo, hi] with mP = O, by a full baby-step giant-step walk.
std::vector<u64> bsgs_multiples(const Curve& C, const Pt& P, u64 lo, u64 hi) {
  std::vector<u64> out;
  const u64 width = hi - lo;
  const u64 s = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(width + 1)) / 2.0)) + 1;
  std::vector<std::pair<u64, u64>> baby;  // (x(jP), j), j = 1..s
  baby.reserve(s);
  std::vector<Pt> pts(s + 1);
  Pt cur;
  for (u64 j = 1; j <= s; ++j) {
    cur = C.add(cur, P);
    if (cur.inf) {
      // small order j
      for (u64 m = (lo + j - 1) / j * j; m <= hi; m += j) out.push_back(m);
      return out;
    }
    pts[j] = cur;
    baby.emplace_back(cur.x, j);
  }
  std::sort(baby.begin(), baby.end());
  const Pt giant = C.mul(2 * s + 1, P);
  auto keep = [&](u64 m) {
    if (m >= lo && m <= hi) out.push_back(m);
  };
  Pt Q = C.mul(lo + s, P);
  for (u64 c = lo + s; c <= hi + s; c += 2 * s + 1) {
    if (Q.inf) {
      keep(c);
    } else {
      auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(Q.x, u64{0}));
      for (; it != baby.end() && it->first == Q.x; ++it) {
        const u64 j = it->second;
        // Q = jP gives m = c - j; Q = -jP gives m = c + j
        if (pts[j].y == Q.y) keep(c - j);
        if (pts[j].y != Q.y || Q.y == 0) keep(c + j);
      }
    }
    Q = C.add(Q, giant);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool random_point(const Curve& C, u64& xseed, Pt& out) {
  for (int tries = 0; tries < 200; ++tries) {
    u64 x = xseed++ % C.F.p;
    u64 r = C.rhs(x);
    auto y = fp::sqrt(r, C.F.p);
    if (!y) continue;
    out = {x, *y, false};
    return true;
  }
  return false;
}

long ap_naive_short(u64 A, u64 B, u64 p) {
  Field F{p};
  long total = static_cast<long>(p) + 1;
  for (u64 x = 0; x < p; ++x) total += fp::legendre(F.add(F.mul(F.add(F.mul(x, x), A), x), B), p);
  return static_cast<long>(p) + 1 - total;
}

}  // namespace

long ap_short_bsgs(std::uint64_t A, std::uint64_t B, std::uint64_t p) {
  if (p < 5 || p >= (1ULL << 31)) throw BadPrime("ap_short_bsgs needs 5 <= p < 2^31");
  Field F{p};
  A %= p;
  B %= p;
  u64 g = 2;
  while (fp::legendre(g, p) != -1) ++g;
  const Curve E{F, A, B};
  const Curve T{F, F.mul(A, F.mul(g, g)), F.mul(B, F.mul(g, F.mul(g, g)))};
  const u64 r = static_cast<u64>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
  const u64 lo = p + 1 - r, hi = p + 1 + r;
  // candidates for #E; #T = 2p + 2 - #E shares the Hasse interval
  std::vector<u64> cand;
  bool started = false;
  u64 seedE = 1, seedT = 1;
  for (int round = 0; round < 24; ++round) {
    const bool onTwist = round % 2 == 1;
    const Curve& C = onTwist ? T : E;
    Pt P;
    if (!random_point(C, onTwist ? seedT : seedE, P)) continue;
    std::vector<u64> ms = bsgs_multiples(C, P, lo, hi);
    if (onTwist) {
      for (auto& m : ms) m = 2 * p + 2 - m;
      std::sort(ms.begin(), ms.end());
    }
    if (!started) {
      cand = std::move(ms);
      started = true;
    } else {
      std::vector<u64> both;
      std::set_intersection(cand.begin(), cand.end(), ms.begin(), ms.end(), std::back_inserter(both));
      cand = std::move(both);
    }
    if (cand.size() == 1) return static_cast<long>(p + 1) - static_cast<long>(cand[0]);
    if (cand.empty()) break;
  }
  return ap_naive_short(A, B, p);
}

namespace {

// Integral invariants of a minimal model, reduced per prime without touching the curve.
struct Invariants {
  const WeierstrassCurve& E;
  Integer c4, c6, disc;

  explicit Invariants(const WeierstrassCurve& curve)
      : E(curve), c4(curve.c4().get_num()), c6(curve.c6().get_num()), disc(curve.disc().get_num()) {
    if (curve.c4().get_den() != 1 || curve.c6().get_den() != 1) throw std::invalid_argument("ap_fast needs an integral model");
  }

  long ap(u64 p) const {
    if (p < kBsgsThreshold || mpz_fdiv_ui(disc.get_mpz_t(), p) == 0) return a_ell(E, static_cast<long>(p));
    const u64 r4 = mpz_fdiv_ui(c4.get_mpz_t(), p), r6 = mpz_fdiv_ui(c6.get_mpz_t(), p);
    // y^2 = x^3 - 27 c4 x - 54 c6
    const u64 A = fp::sub(0, fp::mul(27, r4, p), p);
    const u64 B = fp::sub(0, fp::mul(54, r6, p), p);
    return ap_short_bsgs(A, B, p);
  }
};

}  // namespace

long ap_fast(const WeierstrassCurve& E, std::uint64_t p) { return Invariants(E).ap(p); }

std::vector<std::int32_t> ap_table_serial(const WeierstrassCurve& E, const std::vector<std::uint32_t>& primes) {
  const Invariants inv(E);
  std::vector<std::int32_t> out(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) out[i] = static_cast<std::int32_t>(inv.ap(primes[i]));
  return out;
}

std::vector<std::int32_t> ap_table_parallel(const WeierstrassCurve& E, const std::vector<std::uint32_t>& primes) {
  std::vector<std::int32_t> out(primes.size());
  // warm the bad-prime cache before going parallel
  for (long ell : E.bad_primes()) (void)E.reduction(ell);
  const Invariants inv(E);
  const long n = static_cast<long>(primes.size());
#pragma omp parallel for schedule(dynamic, 4096)
  for (long i = 0; i < n; ++i) out[i] = static_cast<std::int32_t>(inv.ap(primes[i]));
  return out;
}

}  // namespace heeg::kernels
