#pragma once

#include <array>
#include <string>
#include <vector>

#include "heeg/ellcurve/curve.hpp"

namespace heeg {

enum class GaloisType { S3, C3 };
std::string to_string(GaloisType g);

struct TwoTorsionAnalysis {
  // 4x^3 + b2 x^2 + 2 b4 x + b6, constant term first.
  std::array<Rational, 4> cubic;
  Rational cubicDisc;  // equals 16 * disc(E)
  GaloisType galoisType = GaloisType::S3;
  bool discIsSquare = false;
};

// Throws HasRationalTwoTorsion when the 2-division cubic has a rational root.
TwoTorsionAnalysis analyze_two_torsion(const WeierstrassCurve& E);

// Order of Frob_ell on E[2]. Throws BadPrime when ell divides 2N disc(cubic).
int frobenius_order(const WeierstrassCurve& E, long ell);

bool heegner_hypothesis(long dK, const Integer& N);
bool two_splits(long dK);

// ell if ell = 1 mod 4, else -ell.
long signed_prime(long ell);

enum class RankSide { SameAsE, Flipped };
std::string to_string(RankSide s);

struct TwistEntry {
  long d = 0;
  std::vector<long> factors;  // signed primes, increasing |.|
  RankSide side = RankSide::SameAsE;
};

struct TwistSet {
  std::string curve;
  long dK = 0;
  long X = 0;
  long maxFactors = 0;
  std::vector<long> signedPrimes;  // every signed prime with |l*| < X
  std::vector<TwistEntry> twists;  // sorted by |d|
};

// Signed primes of S with |l*| < bound, increasing |l*|.
std::vector<long> signed_s_primes(const WeierstrassCurve& E, long dK, long bound);

// All d in N with |d| < X and at most maxFactors prime factors (0 = unlimited).
TwistSet enumerate_twists(const WeierstrassCurve& E, long dK, long X, long maxFactors = 0);

// Number of d in N with |d| < X for each X in `grid` (ascending), without
// materializing the twists.
std::vector<long> count_twists(const WeierstrassCurve& E, long dK, const std::vector<long>& grid);

// Rank of E^(d) relative to E, by chi_d(-N). When c_2(E) is odd this is
// cross-checked against the sign of disc(E) and d; CriterionMismatch if the
// two disagree.
RankSide rank_side(const WeierstrassCurve& E, long d);

struct DensityReport {
  long primes = 0;  // odd primes below the bound not dividing N
  long hits = 0;
  double frequency = 0;
  double expected = 0;  // 1/6 for S3, 1/3 for C3
};

DensityReport s_density(const WeierstrassCurve& E, long dK, long bound);

}  // namespace heeg
