#include "heeg/ellcurve/count.hpp"

#include <vector>

#include "heeg/ellcurve/fp.hpp"
#include "heeg/errors.hpp"

namespace heeg {

namespace {

struct Coeffs {
  fp::u64 a1, a2, a3, a4, a6;
};

Coeffs reduce_curve(const WeierstrassCurve& E, fp::u64 p) {
  return {fp::reduce(E.a1(), p), fp::reduce(E.a2(), p), fp::reduce(E.a3(), p), fp::reduce(E.a4(), p),
          fp::reduce(E.a6(), p)};
}

}  // namespace

Integer count_points(const WeierstrassCurve& E, long ell) {
  if (ell < 2) throw BadPrime("count_points at " + std::to_string(ell));
  const fp::u64 p = static_cast<fp::u64>(ell);
  Coeffs c = reduce_curve(E, p);
  if (p == 2) {
    long n = 1;
    for (fp::u64 x = 0; x < 2; ++x) {
      for (fp::u64 y = 0; y < 2; ++y) {
        fp::u64 lhs = (y * y + c.a1 * x * y + c.a3 * y) % 2;
        fp::u64 rhs = (x * x * x + c.a2 * x * x + c.a4 * x + c.a6) % 2;
        if (lhs == rhs) ++n;
      }
    }
    return n;
  }
  // squares table for the quadratic character
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (fp::u64 y = 1; y <= p / 2; ++y) chi[fp::mul(y, y, p)] = 1;
  // y^2 + (a1 x + a3) y = f(x)  <=>  (2y + a1 x + a3)^2 = 4 f(x) + (a1 x + a3)^2
  long total = static_cast<long>(p) + 1;
  for (fp::u64 x = 0; x < p; ++x) {
    fp::u64 h = fp::add(fp::mul(c.a1, x, p), c.a3, p);
    fp::u64 f = fp::add(fp::mul(fp::add(fp::mul(fp::add(x, c.a2, p), x, p), c.a4, p), x, p), c.a6, p);
    fp::u64 disc = fp::add(fp::mul(4 % p, f, p), fp::mul(h, h, p), p);
    total += chi[disc];
  }
  return total;
}

long a_ell(const WeierstrassCurve& E, long ell) {
  ReductionData rd = E.reduction(ell);
  switch (rd.kind) {
    case ReductionKind::Good: return ell + 1 - rd.nsCount.get_si();
    case ReductionKind::SplitMultiplicative: return 1;
    case ReductionKind::NonsplitMultiplicative: return -1;
    case ReductionKind::Additive: return 0;
  }
  return 0;
}

Integer ns_count(const WeierstrassCurve& E, long ell) { return E.reduction(ell).nsCount; }

long ns_count_bruteforce(const WeierstrassCurve& E, long ell) {
  const fp::u64 p = static_cast<fp::u64>(ell);
  Coeffs c = reduce_curve(E, p);
  long n = 1;
  for (fp::u64 x = 0; x < p; ++x) {
    for (fp::u64 y = 0; y < p; ++y) {
      // F = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
      fp::u64 lhs = fp::add(fp::mul(y, y, p), fp::add(fp::mul(fp::mul(c.a1, x, p), y, p), fp::mul(c.a3, y, p), p), p);
      fp::u64 rhs = fp::add(fp::add(fp::mul(fp::mul(x, x, p), x, p), fp::mul(c.a2, fp::mul(x, x, p), p), p),
                            fp::add(fp::mul(c.a4, x, p), c.a6, p), p);
      if (lhs != rhs) continue;
      fp::u64 fy = fp::add(fp::add(fp::mul(2 % p, y, p), fp::mul(c.a1, x, p), p), c.a3, p);
      fp::u64 fx = fp::sub(fp::mul(c.a1, y, p),
                           fp::add(fp::add(fp::mul(3 % p, fp::mul(x, x, p), p), fp::mul(2 % p, fp::mul(c.a2, x, p), p), p),
                                   c.a4, p),
                           p);
      if (fx != 0 || fy != 0) ++n;
    }
  }
  return n;
}

}  // namespace heeg
