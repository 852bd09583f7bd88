#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heeg/ellcurve/curve.hpp"
#include "heeg/ellcurve/point.hpp"
#include "heeg/exactnum/padic.hpp"
#include "heeg/exactnum/quad.hpp"
#include "heeg/exactnum/series.hpp"
#include "heeg/heegner/heegner.hpp"

namespace heeg {

// log_omega(t) = sum c_k t^k for the invariant differential of the model, t = -x/y.
struct FormalLogSeries {
  std::string curve;
  RationalSeries coeffs;  // coefficients of t^0 .. t^B
  std::size_t order() const { return coeffs.order() == 0 ? 0 : coeffs.order() - 1; }
};

// w(t) = -1/y as a series in t, to t^B.
RationalSeries formal_w(const WeierstrassCurve& E, std::size_t B);
// omega / dt = dx / (2y + a1 x + a3) / dt, to t^(B-1).
RationalSeries formal_omega(const WeierstrassCurve& E, std::size_t B);
FormalLogSeries formal_log_series(const WeierstrassCurve& E, std::size_t B);

struct LogOptions {
  long prec = 20;             // relative 2-adic digits wanted in the result
  long startMultiplier = 0;   // 0 selects nsCount_p * c_p
  int maxDoublings = 6;
};

struct LogResult {
  PadicNumber value;
  long multiplier = 0;  // n with the value computed as log(nP) / n
  long tValuation = 0;  // v_p(t(nP))
  std::size_t terms = 0;
};

// p-adic log_omega(P) through nP in the formal group. The embedding must be at
// the prime p; for rational points it is unused. Torsion points give exact zero.
LogResult log_omega(const WeierstrassCurve& E, const QuadPoint& P, const QuadEmbedding& emb, const LogOptions& opt = {});
LogResult log_omega_rational(const WeierstrassCurve& E, const RationalPoint& P, unsigned long p, const LogOptions& opt = {});

// Exact torsion test over K: a denominator with a prime >= 5 rules torsion
// out, otherwise mP = O is checked for m <= 24.
bool is_torsion(const WeierstrassCurve& E, const QuadPoint& P, long dK);

struct StarReport {
  std::string curve;
  long dK = 0;
  std::string heegnerSource;
  QuadPoint point;
  long multiplier = 1;  // the point is multiplier * P
  Integer nsCount2 = 0;
  PadicNumber logValue[2];    // under the two embeddings
  PadicNumber normalized[2];  // nsCount2 * log / 2
  bool starHolds = false;
  long precision = 0;
};

// Assumption check for a given Heegner point (divided by `multiplier`).
StarReport star_from_point(const WeierstrassCurve& E, long dK, const HeegnerPointResult& hp, long prec = 20);
StarReport star_check(const WeierstrassCurve& E, long dK, CoeffSource& coeffs, const HeegnerConfig& cfg = {},
                      const std::optional<QuadPoint>& known = std::nullopt, long prec = 20);

// nsCount(E, ell) / ell in Q_p.
PadicNumber euler_factor(const WeierstrassCurve& E, long ell, unsigned long p, long prec);

struct CongruencePair {
  WeierstrassCurve E, Ep;
  long twist = 0;           // Ep is E twisted by this fundamental discriminant, 0 if not a twist pair
  bool userFlagged = false; // E[p^m]^ss = Ep[p^m]^ss certified externally
};

struct CongruenceReport {
  std::string curveE, curveEp;
  long dK = 0;
  unsigned long p = 2;
  long m = 1;
  Integer M = 1;
  std::vector<std::pair<long, PadicNumber>> eulerE, eulerEp;
  PadicNumber lhs, rhs;
  PadicNumber normalizedE, normalizedEp;  // nsCount_p * log / p on each side
  bool verdict = false;
  std::string sign;  // "+", "-", "+/-" or "none"
  long precision = 0;
};

// The congruence between Euler-factor-weighted p-adic logs of the two
// Heegner points, tested for both signs. Throws UnsupportedPair outside the
// twist regime with m = 1 unless the pair is flagged.
CongruenceReport verify_main_congruence(const CongruencePair& pair, long dK, unsigned long p, long m,
                                        const HeegnerPointResult& P, const HeegnerPointResult& Pp, long prec = 20);

// M = prod over ell | (N, N') with a_ell = a'_ell mod p^m of ell^ord_ell(N N').
Integer congruence_modulus(const WeierstrassCurve& E, const WeierstrassCurve& Ep, unsigned long p, long m);

struct BSDPreconditionReport {
  std::string curve;
  long dK = 0;
  long d = 1;
  std::map<long, long> tamagawa;  // c_ell of the (twisted) curve
  bool allTamagawaOdd = false;
  bool c2Odd = false;             // of the base curve
  bool additiveAt2 = false;
  bool maninOddAssumed = false;
  int discSign = 0;
  int chiDMinusN = 1;
  bool twistInN = true;           // d = 1 or d in the twist family
  std::optional<bool> star;       // supplied by the caller when known
  bool overKApplies = false;      // BSD(2) for E/K transfers to the twist over K
  bool overQApplies = false;      // additionally chi_d(-N) = 1: transfers over Q
  bool rankSideConsistent = true; // chi_d(-N) = 1 iff disc < 0 or d > 0, checked when c2 is odd
  std::vector<std::string> notes;
};

BSDPreconditionReport bsd_preconditions(const WeierstrassCurve& E, long dK, long d, bool maninOdd,
                                        std::optional<bool> star = std::nullopt);

}  // namespace heeg
