#pragma once

#include <string>

#include "heeg/ellcurve/curve.hpp"
#include "heeg/errors.hpp"
#include "heeg/exactnum/padic.hpp"
#include "heeg/exactnum/quad.hpp"

namespace heeg {

// Field adapters: how to embed Q and test for zero in each coordinate ring.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  struct Context {};
  static Rational from_rational(const Rational& q, const Context&) { return q; }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct FieldOps<QuadElem> {
  struct Context {
    long D = 1;
  };
  static QuadElem from_rational(const Rational& q, const Context& c) { return QuadElem(c.D, q, 0); }
  static bool is_zero(const QuadElem& x) { return x.is_zero(); }
};

template <>
struct FieldOps<PadicNumber> {
  struct Context {
    unsigned long p = 2;
    long prec = kDefaultPadicPrec;
  };
  static PadicNumber from_rational(const Rational& q, const Context& c) {
    return PadicNumber::from_rational(q, c.p, c.prec);
  }
  static bool is_zero(const PadicNumber& x) { return x.is_zero(); }
};

template <class F>
struct CurvePoint {
  bool infinity = true;
  F x{}, y{};

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(F x, F y) { return {false, std::move(x), std::move(y)}; }
};

// The curve's coefficients coerced into F.
template <class F>
struct Model {
  F a1, a2, a3, a4, a6;
  typename FieldOps<F>::Context ctx;

  Model(const WeierstrassCurve& E, typename FieldOps<F>::Context c = {}) : ctx(c) {
    a1 = FieldOps<F>::from_rational(E.a1(), ctx);
    a2 = FieldOps<F>::from_rational(E.a2(), ctx);
    a3 = FieldOps<F>::from_rational(E.a3(), ctx);
    a4 = FieldOps<F>::from_rational(E.a4(), ctx);
    a6 = FieldOps<F>::from_rational(E.a6(), ctx);
  }
  F lift(const Rational& q) const { return FieldOps<F>::from_rational(q, ctx); }
};

template <class F>
bool on_curve(const Model<F>& M, const CurvePoint<F>& P) {
  if (P.infinity) return true;
  F lhs = P.y * P.y + M.a1 * P.x * P.y + M.a3 * P.y;
  F rhs = P.x * P.x * P.x + M.a2 * P.x * P.x + M.a4 * P.x + M.a6;
  return FieldOps<F>::is_zero(lhs - rhs);
}

template <class F>
CurvePoint<F> point_neg(const Model<F>& M, const CurvePoint<F>& P) {
  if (P.infinity) return P;
  return CurvePoint<F>::affine(P.x, -P.y - M.a1 * P.x - M.a3);
}

template <class F>
CurvePoint<F> point_add(const Model<F>& M, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  F lambda, nu;
  if (FieldOps<F>::is_zero(P.x - Q.x)) {
    F ysum = P.y + Q.y + M.a1 * Q.x + M.a3;
    if (FieldOps<F>::is_zero(ysum)) return CurvePoint<F>::at_infinity();
    F three = M.lift(3), two = M.lift(2);
    F num = three * P.x * P.x + two * M.a2 * P.x + M.a4 - M.a1 * P.y;
    F den = two * P.y + M.a1 * P.x + M.a3;
    if (FieldOps<F>::is_zero(den)) throw NonInvertibleDenominator("tangent slope denominator vanishes");
    lambda = num / den;
    nu = (-(P.x * P.x * P.x) + M.a4 * P.x + two * M.a6 - M.a3 * P.y) / den;
  } else {
    F den = Q.x - P.x;
    lambda = (Q.y - P.y) / den;
    nu = (P.y * Q.x - Q.y * P.x) / den;
  }
  F x3 = lambda * lambda + M.a1 * lambda - M.a2 - P.x - Q.x;
  F y3 = -(lambda + M.a1) * x3 - nu - M.a3;
  return CurvePoint<F>::affine(x3, y3);
}

template <class F>
CurvePoint<F> scalar_mul(const Model<F>& M, long n, const CurvePoint<F>& P) {
  CurvePoint<F> base = n < 0 ? point_neg(M, P) : P;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  CurvePoint<F> acc = CurvePoint<F>::at_infinity();
  while (k) {
    if (k & 1) acc = point_add(M, acc, base);
    k >>= 1;
    if (k) base = point_add(M, base, base);
  }
  return acc;
}

template <class F>
bool points_equal(const CurvePoint<F>& P, const CurvePoint<F>& Q) {
  if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
  return FieldOps<F>::is_zero(P.x - Q.x) && FieldOps<F>::is_zero(P.y - Q.y);
}

using RationalPoint = CurvePoint<Rational>;
using QuadPoint = CurvePoint<QuadElem>;

inline std::string to_string(const RationalPoint& P) {
  return P.infinity ? "O" : "(" + P.x.get_str() + ", " + P.y.get_str() + ")";
}
inline std::string to_string(const QuadPoint& P) {
  return P.infinity ? "O" : "(" + P.x.to_string() + ", " + P.y.to_string() + ")";
}

}  // namespace heeg
