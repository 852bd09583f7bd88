#include "heeg/ellcurve/curve.hpp"

#include <sstream>

#include "heeg/ellcurve/count.hpp"
#include "heeg/ellcurve/fp.hpp"
#include "heeg/errors.hpp"

namespace heeg {

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "good";
    case ReductionKind::SplitMultiplicative: return "split";
    case ReductionKind::NonsplitMultiplicative: return "nonsplit";
    case ReductionKind::Additive: return "additive";
  }
  return "?";
}

std::string Kodaira::to_string() const {
  switch (type) {
    case I0: return "I0";
    case In: return "I" + std::to_string(n);
    case II: return "II";
    case III: return "III";
    case IV: return "IV";
    case I0s: return "I0*";
    case Ins: return "I" + std::to_string(n) + "*";
    case IVs: return "IV*";
    case IIIs: return "III*";
    case IIs: return "II*";
  }
  return "?";
}

WeierstrassCurve::WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6, std::string label)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}, label_(std::move(label)) {
  const auto& [A1, A2, A3, A4, A6] = a_;
  b_[0] = A1 * A1 + 4 * A2;
  b_[1] = 2 * A4 + A1 * A3;
  b_[2] = A3 * A3 + 4 * A6;
  b_[3] = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  const auto& [b2, b4, b6, b8] = b_;
  c4_ = b2 * b2 - 24 * b4;
  c6_ = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc_ = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc_ == 0) throw SingularCurve("singular Weierstrass model [" + ainvs_string() + "]");
}

WeierstrassCurve WeierstrassCurve::from_ainvs(const std::array<long, 5>& a, std::string label) {
  return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4], std::move(label));
}

WeierstrassCurve WeierstrassCurve::parse(const std::string& text, std::string label) {
  std::string s;
  for (char ch : text) {
    if (ch != '[' && ch != ']' && ch != ' ') s.push_back(ch);
  }
  std::array<Rational, 5> a;
  std::size_t start = 0;
  for (int i = 0; i < 5; ++i) {
    std::size_t comma = s.find(',', start);
    if ((comma == std::string::npos) != (i == 4)) throw ParseError("expected five a-invariants: '" + text + "'");
    a[i] = parse_rational(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    start = comma + 1;
  }
  return WeierstrassCurve(a[0], a[1], a[2], a[3], a[4], std::move(label));
}

std::string WeierstrassCurve::ainvs_string() const {
  std::ostringstream os;
  for (int i = 0; i < 5; ++i) os << (i ? "," : "") << a_[i].get_str();
  return os.str();
}

bool WeierstrassCurve::is_integral() const {
  for (const auto& a : a_) {
    if (!heeg::is_integral(a)) return false;
  }
  return true;
}

WeierstrassCurve WeierstrassCurve::change_coords(const ChangeOfCoords& w) const {
  const auto& [a1, a2, a3, a4, a6] = a_;
  const Rational &u = w.u, &r = w.r, &s = w.s, &t = w.t;
  if (u == 0) throw std::invalid_argument("change of coordinates with u = 0");
  Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  Rational n1 = (a1 + 2 * s) / u;
  Rational n2 = (a2 - s * a1 + 3 * r - s * s) / u2;
  Rational n3 = (a3 + r * a1 + 2 * t) / u3;
  Rational n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4;
  Rational n6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6;
  return WeierstrassCurve(n1, n2, n3, n4, n6, label_);
}

// ------------------------------------------------------------------ Tate

namespace {

constexpr long kInf = 1L << 30;

long val(const Integer& x, long p) { return x == 0 ? kInf : valuation(x, static_cast<unsigned long>(p)); }

struct IntModel {
  Integer a1, a2, a3, a4, a6;
  Integer b2, b4, b6, b8, c4, c6, disc;

  void refresh() {
    b2 = a1 * a1 + 4 * a2;
    b4 = 2 * a4 + a1 * a3;
    b6 = a3 * a3 + 4 * a6;
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4 = b2 * b2 - 24 * b4;
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  }

  void rst(const Integer& r, const Integer& s, const Integer& t) {
    Integer n1 = a1 + 2 * s;
    Integer n2 = a2 - s * a1 + 3 * r - s * s;
    Integer n3 = a3 + r * a1 + 2 * t;
    Integer n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Integer n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = n1, a2 = n2, a3 = n3, a4 = n4, a6 = n6;
    refresh();
  }
};

Integer pmod(const Integer& x, long p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
  return r;
}

Integer divexact(const Integer& x, const Integer& d) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return q;
}

fp::u64 red(const Integer& x, long p) { return fp::reduce(x, static_cast<fp::u64>(p)); }

bool quad_roots(const Integer& a, const Integer& b, const Integer& c, long p) {
  return fp::quadratic_has_root(red(a, p), red(b, p), red(c, p), static_cast<fp::u64>(p));
}

int cubic_roots(const Integer& b, const Integer& c, const Integer& d, long p) {
  return fp::cubic_root_count(red(b, p), red(c, p), red(d, p), static_cast<fp::u64>(p));
}

Integer inv_mod(const Integer& a, long p) {
  return Integer(static_cast<unsigned long>(fp::inv(red(a, p), static_cast<fp::u64>(p))));
}

}  // namespace

std::pair<ReductionData, WeierstrassCurve> tate_with_model(const WeierstrassCurve& E, long p) {
  if (!E.is_integral()) throw std::invalid_argument("tate_algorithm needs an integral model");
  if (!is_prime(Integer(p))) throw BadPrime("tate_algorithm at non-prime " + std::to_string(p));
  IntModel C{E.a1().get_num(), E.a2().get_num(), E.a3().get_num(), E.a4().get_num(), E.a6().get_num()};
  C.refresh();
  const Integer P = p, P2 = P * P, P3 = P2 * P, P4 = P2 * P2;
  const Integer half = (p == 2) ? Integer(0) : inv_mod(Integer(2), p);
  ReductionData out;
  out.ell = p;

  while (true) {
    long vd = val(C.disc, p);
    out.discValuation = vd;
    if (vd == 0) {
      out.kind = ReductionKind::Good;
      out.kodaira = {Kodaira::I0, 0};
      out.tamagawa = 1;
      out.conductorExponent = 0;
      break;
    }
    Integer r, s, t;
    if (p == 2) {
      if (pmod(C.b2, p) == 0) {
        r = pmod(C.a4, p);
        t = pmod(r * (1 + C.a2 + C.a4) + C.a6, p);
      } else {
        r = pmod(C.a3, p);
        t = pmod(r + C.a4, p);
      }
    } else if (p == 3) {
      r = pmod(pmod(C.b2, p) == 0 ? Integer(-C.b6) : Integer(-C.b2 * C.b4), p);
      t = pmod(C.a1 * r + C.a3, p);
    } else {
      if (pmod(C.c4, p) == 0) {
        r = pmod(-inv_mod(12, p) * C.b2, p);
      } else {
        r = pmod(-inv_mod(12 * C.c4, p) * (C.c6 + C.b2 * C.c4), p);
      }
      t = pmod(-half * (C.a1 * r + C.a3), p);
    }
    C.rst(r, 0, t);

    if (val(C.c4, p) == 0) {
      bool split = quad_roots(1, C.a1, -C.a2, p);
      out.kind = split ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative;
      out.kodaira = {Kodaira::In, static_cast<int>(vd)};
      out.tamagawa = split ? vd : (vd % 2 == 0 ? 2 : 1);
      out.conductorExponent = 1;
      break;
    }
    out.kind = ReductionKind::Additive;
    if (val(C.a6, p) < 2) {
      out.kodaira = {Kodaira::II, 0};
      out.tamagawa = 1;
      out.conductorExponent = vd;
      break;
    }
    if (val(C.b8, p) < 3) {
      out.kodaira = {Kodaira::III, 0};
      out.tamagawa = 2;
      out.conductorExponent = vd - 1;
      break;
    }
    if (val(C.b6, p) < 3) {
      out.kodaira = {Kodaira::IV, 0};
      out.tamagawa = quad_roots(1, divexact(C.a3, P), -divexact(C.a6, P2), p) ? 3 : 1;
      out.conductorExponent = vd - 2;
      break;
    }
    if (p == 2) {
      s = pmod(C.a2, p);
      t = P * pmod(divexact(C.a6, P2), p);
    } else {
      s = -C.a1 * half;
      t = -C.a3 * half;
    }
    C.rst(0, s, t);

    Integer b = pmod(divexact(C.a2, P), p), c = pmod(divexact(C.a4, P2), p), d = pmod(divexact(C.a6, P3), p);
    Integer w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    Integer x = 3 * c - b * b;
    int sw = pmod(w, p) != 0 ? 1 : (pmod(x, p) != 0 ? 2 : 3);

    if (sw == 1) {
      out.kodaira = {Kodaira::I0s, 0};
      out.tamagawa = 1 + cubic_roots(b, c, d, p);
      out.conductorExponent = vd - 4;
      break;
    }
    if (sw == 2) {
      if (p == 2) {
        r = c;
      } else if (p == 3) {
        r = b * c;
      } else {
        r = pmod((b * c - 9 * d) * inv_mod(2 * x, p), p);
      }
      C.rst(P * pmod(r, p), 0, 0);
      long ix = 3, iy = 3;
      Integer mx = P2, my = P2;
      while (true) {
        Integer a3t = divexact(C.a3, my), a6t = divexact(C.a6, mx * my);
        if (pmod(a3t * a3t + 4 * a6t, p) != 0) {
          out.tamagawa = quad_roots(1, a3t, -a6t, p) ? 4 : 2;
          break;
        }
        t = (p == 2) ? Integer(my * pmod(a6t, p)) : Integer(my * pmod(-a3t * half, p));
        C.rst(0, 0, t);
        my *= P;
        ++iy;
        Integer a2t = divexact(C.a2, P), a4t = divexact(C.a4, P * mx);
        a6t = divexact(C.a6, mx * my);
        if (pmod(a4t * a4t - 4 * a6t * a2t, p) != 0) {
          out.tamagawa = quad_roots(a2t, a4t, a6t, p) ? 4 : 2;
          break;
        }
        r = (p == 2) ? Integer(mx * pmod(a6t * a2t, p)) : Integer(mx * pmod(-a4t * inv_mod(2 * a2t, p), p));
        C.rst(r, 0, 0);
        mx *= P;
        ++ix;
      }
      out.kodaira = {Kodaira::Ins, static_cast<int>(ix + iy - 5)};
      out.conductorExponent = vd - ix - iy + 1;
      break;
    }
    // triple root
    if (p == 2) {
      r = b;
    } else if (p == 3) {
      r = -d;
    } else {
      r = -b * inv_mod(3, p);
    }
    C.rst(P * pmod(r, p), 0, 0);
    Integer a3t = divexact(C.a3, P2), a6t = divexact(C.a6, P4);
    if (pmod(a3t * a3t + 4 * a6t, p) != 0) {
      out.kodaira = {Kodaira::IVs, 0};
      out.tamagawa = quad_roots(1, a3t, -a6t, p) ? 3 : 1;
      out.conductorExponent = vd - 6;
      break;
    }
    t = (p == 2) ? Integer(P2 * pmod(a6t, p)) : Integer(P2 * pmod(-a3t * half, p));
    C.rst(0, 0, t);
    if (val(C.a4, p) < 4) {
      out.kodaira = {Kodaira::IIIs, 0};
      out.tamagawa = 2;
      out.conductorExponent = vd - 7;
      break;
    }
    if (val(C.a6, p) < 6) {
      out.kodaira = {Kodaira::IIs, 0};
      out.tamagawa = 1;
      out.conductorExponent = vd - 8;
      break;
    }
    // not minimal at p
    C.a1 = divexact(C.a1, P);
    C.a2 = divexact(C.a2, P2);
    C.a3 = divexact(C.a3, P3);
    C.a4 = divexact(C.a4, P4);
    C.a6 = divexact(C.a6, P4 * P2);
    C.refresh();
  }

  WeierstrassCurve model(C.a1, C.a2, C.a3, C.a4, C.a6, E.label());
  switch (out.kind) {
    case ReductionKind::Good: out.nsCount = count_points(model, p); break;
    case ReductionKind::SplitMultiplicative: out.nsCount = p - 1; break;
    case ReductionKind::NonsplitMultiplicative: out.nsCount = p + 1; break;
    case ReductionKind::Additive: out.nsCount = p; break;
  }
  if (p >= 5 && out.kodaira.type == Kodaira::In) {
    bool bySquare = fp::legendre(red(-C.c6, p), static_cast<fp::u64>(p)) == 1;
    if (bySquare != (out.kind == ReductionKind::SplitMultiplicative)) {
      throw CriterionMismatch("split-multiplicative tests disagree at " + std::to_string(p));
    }
  }
  return {out, model};
}

ReductionData tate_algorithm(const WeierstrassCurve& E, long ell) { return tate_with_model(E, ell).first; }

// ------------------------------------------------------------ models

namespace {

Integer floor_div(const Integer& a, long b) {
  Integer q;
  mpz_fdiv_q_ui(q.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(b));
  return q;
}

WeierstrassCurve integral_model(const WeierstrassCurve& E) {
  Integer D = 1;
  for (int i = 0; i < 5; ++i) {
    const Integer& den = E.ainvs()[i].get_den();
    if (den == 1) continue;
    static const int weights[5] = {1, 2, 3, 4, 6};
    for (const auto& [q, e] : factor(den)) {
      long need = (static_cast<long>(e) + weights[i] - 1) / weights[i];
      long have = (D % q == 0) ? valuation(D, q.get_ui()) : 0;
      if (need > have) D *= ipow(q, static_cast<unsigned long>(need - have));
    }
  }
  if (D == 1) return E;
  return E.change_coords({Rational(1, 1) / Rational(D), 0, 0, 0});
}

}  // namespace

WeierstrassCurve minimal_model(const WeierstrassCurve& E0) {
  WeierstrassCurve E = integral_model(E0);
  Integer disc = E.disc().get_num();
  for (const auto& [q, e] : factor(disc)) {
    if (e < 12) continue;
    if (!q.fits_slong_p()) throw std::domain_error("prime too large for local minimization");
    E = tate_with_model(E, q.get_si()).second;
  }
  // Cremona normalization.
  Integer a1 = E.a1().get_num(), a2 = E.a2().get_num(), a3 = E.a3().get_num();
  Integer s = -floor_div(a1, 2);
  Integer A = a2 - s * a1 - s * s;
  Integer r = -floor_div(A + 1, 3);
  Integer t = -floor_div(a3 + r * a1, 2);
  WeierstrassCurve M = E.change_coords({1, Rational(r), Rational(s), Rational(t)});
  M.set_label(E0.label());
  return M;
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, long d) {
  if (d == 0) throw std::invalid_argument("twist by zero");
  Rational D = d;
  WeierstrassCurve T(0, 0, 0, -27 * D * D * E.c4(), -54 * D * D * D * E.c6());
  WeierstrassCurve M = minimal_model(T);
  M.set_label(d == 1 ? E.label() : E.label() + "^(" + std::to_string(d) + ")");
  return M;
}

// ------------------------------------------------------------ cache

std::vector<long> WeierstrassCurve::bad_primes() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->badPrimes) {
    if (!is_integral()) throw std::invalid_argument("bad_primes needs an integral model");
    std::vector<long> ps;
    for (const auto& [q, e] : factor(disc_.get_num())) {
      if (!q.fits_slong_p()) throw std::domain_error("bad prime too large");
      ps.push_back(q.get_si());
    }
    cache_->badPrimes = ps;
  }
  return *cache_->badPrimes;
}

ReductionData WeierstrassCurve::reduction(long ell) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->local.find(ell);
    if (it != cache_->local.end()) return it->second;
  }
  ReductionData rd = tate_algorithm(*this, ell);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->local.emplace(ell, rd);
  return rd;
}

Integer WeierstrassCurve::conductor() const {
  Integer N = 1;
  for (long p : bad_primes()) N *= ipow(Integer(p), static_cast<unsigned long>(reduction(p).conductorExponent));
  return N;
}

}  // namespace heeg
