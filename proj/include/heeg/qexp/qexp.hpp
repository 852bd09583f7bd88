#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "heeg/ellcurve/curve.hpp"
#include "heeg/exactnum/padic.hpp"
#include "heeg/exactnum/series.hpp"

namespace heeg {

// Normalized weight-2 eigenform coefficients a_1..a_B of an elliptic curve.
struct EigenformCoeffs {
  Integer N;
  int weight = 2;
  std::string label;
  std::vector<std::int32_t> a;  // a[0] = 0

  std::size_t length() const { return a.empty() ? 0 : a.size() - 1; }
  long operator[](std::size_t n) const { return a.at(n); }
};

// a_n for n <= B from a_p (x-scan below 1000, baby-step giant-step above) and
// the Hecke recursions. E must be a minimal model.
EigenformCoeffs anlist(const WeierstrassCurve& E, std::size_t B);
// Same, with the serial a_p kernel.
EigenformCoeffs anlist_serial(const WeierstrassCurve& E, std::size_t B);
// a_n for n <= B, reusing the a_p of a shorter list for E.
EigenformCoeffs anlist_extend(const WeierstrassCurve& E, const EigenformCoeffs& prev, std::size_t B);
// Coefficients chi_d(n) a_n of the twist by a fundamental discriminant d
// coprime to N; the level becomes N d^2.
EigenformCoeffs twist_coeffs(const EigenformCoeffs& f, long d);

// Provides coefficient lists of growing length, keeping the longest one built.
class CoeffSource {
 public:
  virtual ~CoeffSource() = default;
  virtual std::shared_ptr<const EigenformCoeffs> get(std::size_t B) = 0;
};

class CurveCoeffSource : public CoeffSource {
 public:
  explicit CurveCoeffSource(WeierstrassCurve E) : E_(std::move(E)) {}
  std::shared_ptr<const EigenformCoeffs> get(std::size_t B) override;

 private:
  WeierstrassCurve E_;
  std::mutex mu_;
  std::shared_ptr<const EigenformCoeffs> best_;
};

class TwistCoeffSource : public CoeffSource {
 public:
  TwistCoeffSource(std::shared_ptr<CoeffSource> base, long d) : base_(std::move(base)), d_(d) {}
  std::shared_ptr<const EigenformCoeffs> get(std::size_t B) override;

 private:
  std::shared_ptr<CoeffSource> base_;
  long d_;
  std::mutex mu_;
  std::shared_ptr<const EigenformCoeffs> best_;
};

using QSeries = PowerSeries<Rational>;
using PadicSeries = PowerSeries<PadicNumber>;

// sum_{n < B} a_n q^n.
QSeries to_qseries(const EigenformCoeffs& f, std::size_t B);
PadicSeries to_padic(const QSeries& F, unsigned long p, long prec);

// F(q^ell).
template <class R>
PowerSeries<R> substitute_power(const PowerSeries<R>& F, long ell) {
  PowerSeries<R> r(F.order(), F.zero());
  for (std::size_t n = 0; n * static_cast<std::size_t>(ell) < F.order(); ++n) r[n * ell] = F[n];
  return r;
}

enum class StabMode { Plus, Minus, Zero };
std::string to_string(StabMode m);

// Roots of X^2 - a X + ell^(k-1) in Q_p, alpha of strictly smaller valuation.
// Throws RootsNotInRing when they are not in Q_p, are not p-integral, or
// have equal valuation.
struct HeckeRoots {
  PadicNumber alpha, beta;
};
HeckeRoots hecke_roots(long aEll, long ell, unsigned long p, long prec, int weight = 2);

// Local data used by a stabilization at ell.
struct StabilizationStep {
  long ell = 0;
  StabMode mode = StabMode::Zero;
  long aEll = 0;             // Hecke eigenvalue of the form at ell
  bool ellDividesN = false;  // selects the ell | N shape of the mode-0 operator
};

// Mode 0 over Q: F - a F(q^ell) + ell^(k-1) F(q^(ell^2)), or F - a F(q^ell) if ell | N.
QSeries stabilize(const QSeries& F, const StabilizationStep& s, int weight = 2);
// Any mode over Q_p; modes + and - need the roots.
PadicSeries stabilize(const PadicSeries& F, const StabilizationStep& s, const HeckeRoots* roots, int weight = 2);

struct StabilizedForm {
  std::string baseLabel;
  std::vector<StabilizationStep> ops;
  std::vector<HeckeRoots> roots;  // one per +/- step, in order
  PadicSeries series;
};

// Applies the steps in order to the q-expansion of f, over Q_p.
StabilizedForm stabilize_chain(const EigenformCoeffs& f, const std::vector<std::pair<long, StabMode>>& ops,
                               unsigned long p, long prec, std::size_t B);

// Integer n as an element of R; p-adic lifts carry kExactLiftPrec digits.
inline constexpr long kExactLiftPrec = 1024;
template <class R>
R lift_integer(long n, const R&) {
  return R(n);
}
inline PadicNumber lift_integer(long n, const PadicNumber& zero) {
  return n == 0 ? PadicNumber::exact_zero(zero.prime()) : PadicNumber::from_integer(n, zero.prime(), kExactLiftPrec);
}

// theta^j for j >= 0: a_n -> n^j a_n.
template <class R>
PowerSeries<R> theta(const PowerSeries<R>& F, long j) {
  if (j < 0) throw std::invalid_argument("theta with negative exponent needs a depleted series");
  PowerSeries<R> r = F;
  for (std::size_t n = 0; n < F.order(); ++n) {
    for (long i = 0; i < j; ++i) r[n] = lift_integer(static_cast<long>(n), F.zero()) * r[n];
  }
  return r;
}

// A p-adic series with exactly-zero coefficients at every multiple of p.
class DepletedSeries {
 public:
  // Throws NotDepleted.
  DepletedSeries(unsigned long p, PadicSeries s);
  unsigned long prime() const { return p_; }
  const PadicSeries& series() const { return s_; }

 private:
  unsigned long p_;
  PadicSeries s_;
};

// Zeroes every coefficient at a multiple of p.
DepletedSeries deplete(const PadicSeries& F, unsigned long p);
// theta^j on a depleted series, any integer j.
DepletedSeries theta(const DepletedSeries& F, long j);
DepletedSeries theta_inverse_depleted(const DepletedSeries& F);

struct QexpCongruence {
  bool congruent = true;
  long firstFailure = -1;  // smallest n with a_n(F) != a_n(G) mod p^m
  long checkedTo = 0;      // coefficients 0..checkedTo-1 compared
};

// Coefficientwise F == G mod p^m for n < B. Rational coefficients must be p-integral.
QexpCongruence qexp_congruent(const QSeries& F, const QSeries& G, unsigned long p, long m, std::size_t B);
QexpCongruence qexp_congruent(const PadicSeries& F, const PadicSeries& G, unsigned long p, long m, std::size_t B);

}  // namespace heeg
