#include "heeg/ellcurve/fp.hpp"

#include <array>

#include "heeg/errors.hpp"

namespace heeg::fp {

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) {
  // extended Euclid on signed 128-bit to stay exact
  __int128 t = 0, nt = 1, r = static_cast<__int128>(p), nr = static_cast<__int128>(a % p);
  if (nr == 0) throw NonInvertibleDenominator("inverse of zero mod p");
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw NonInvertibleDenominator("non-invertible residue");
  if (t < 0) t += static_cast<__int128>(p);
  return static_cast<u64>(t);
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return 1;
  u64 r = pow(a, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

std::optional<u64> sqrt(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 m = static_cast<u64>(s), c = pow(z, q, p), t = pow(a, q, p), r = pow(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mul(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b, p);
    m = i;
    c = mul(b, b, p);
    t = mul(t, c, p);
    r = mul(r, b, p);
  }
  return r;
}

u64 reduce(const Integer& x, u64 p) { return mpz_fdiv_ui(x.get_mpz_t(), p); }

u64 reduce(const Rational& x, u64 p) {
  u64 den = reduce(x.get_den(), p);
  if (den == 0) throw NonInvertibleDenominator("denominator divisible by p");
  return mul(reduce(x.get_num(), p), inv(den, p), p);
}

namespace {

// Polynomials of degree < 3 modulo a monic cubic f = x^3 + b x^2 + c x + d.
using Poly = std::array<u64, 3>;

Poly mulmod_cubic(const Poly& u, const Poly& v, u64 b, u64 c, u64 d, u64 p) {
  std::array<u64, 5> w{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) w[i + j] = add(w[i + j], mul(u[i], v[j], p), p);
  }
  // x^3 = -b x^2 - c x - d
  for (int k = 4; k >= 3; --k) {
    u64 co = w[k];
    if (co == 0) continue;
    w[k] = 0;
    w[k - 1] = sub(w[k - 1], mul(co, b, p), p);
    w[k - 2] = sub(w[k - 2], mul(co, c, p), p);
    w[k - 3] = sub(w[k - 3], mul(co, d, p), p);
  }
  return {w[0], w[1], w[2]};
}

int degree(const std::array<u64, 4>& f) {
  for (int i = 3; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

// Degree of gcd of two polynomials of degree <= 3 over F_p.
int gcd_degree(std::array<u64, 4> a, std::array<u64, 4> g, u64 p) {
  while (degree(g) >= 0) {
    int dg = degree(g);
    u64 lead = inv(g[dg], p);
    while (degree(a) >= dg) {
      int da = degree(a);
      u64 q = mul(a[da], lead, p);
      for (int i = 0; i <= dg; ++i) a[da - dg + i] = sub(a[da - dg + i], mul(q, g[i], p), p);
    }
    std::swap(a, g);
  }
  return degree(a);
}

}  // namespace

int cubic_root_count(u64 b, u64 c, u64 d, u64 p) {
  b %= p;
  c %= p;
  d %= p;
  if (p < 64) {
    int n = 0;
    for (u64 x = 0; x < p; ++x) {
      u64 v = add(add(mul(mul(x, x, p), x, p), mul(b, mul(x, x, p), p), p), add(mul(c, x, p), d, p), p);
      if (v == 0) ++n;
    }
    return n;
  }
  // x^p mod f, then gcd(f, x^p - x)
  Poly result{1, 0, 0}, base{0, 1, 0};
  u64 e = p;
  while (e) {
    if (e & 1) result = mulmod_cubic(result, base, b, c, d, p);
    base = mulmod_cubic(base, base, b, c, d, p);
    e >>= 1;
  }
  std::array<u64, 4> h{result[0], sub(result[1], 1, p), result[2], 0};
  std::array<u64, 4> f{d, c, b, 1};
  if (degree(h) < 0) return 3;
  return gcd_degree(f, h, p);
}

bool quadratic_has_root(u64 a, u64 b, u64 c, u64 p) {
  a %= p;
  b %= p;
  c %= p;
  if (p == 2 || p < 64) {
    for (u64 x = 0; x < p; ++x) {
      if (add(add(mul(a, mul(x, x, p), p), mul(b, x, p), p), c, p) == 0) return true;
    }
    return false;
  }
  if (a == 0) return b != 0 || c == 0;
  u64 disc = sub(mul(b, b, p), mul(4 % p, mul(a, c, p), p), p);
  return legendre(disc, p) >= 0;
}

}  // namespace heeg::fp
