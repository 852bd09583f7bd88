#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heeg/ellcurve/curve.hpp"
#include "heeg/ellcurve/point.hpp"
#include "heeg/heegner/forms.hpp"
#include "heeg/heegner/lattice.hpp"
#include "heeg/qexp/qexp.hpp"

namespace heeg {

struct HeegnerConfig {
  long startBits = 128;
  long maxBits = kMaxComplexBits;
  std::size_t coeffCap = 50'000'000;
  // Odd multipliers c tried for exp(c z) when the model's lattice is finer
  // than the lattice of the newform.
  std::vector<long> multipliers = {1, 3, 5, 7, 9, 15};
  // When exp(c z) is not recognized, points Q with m Q = exp(c z) are tried
  // for m up to this bound; Q has 1/m^2 of the height.
  long maxDivisor = 8;
};

// q = exp(2 pi i tau) at `prec` bits.
BigComplex tau_to_q(const HeegnerTau& tau, mpfr_prec_t prec);
double tau_imag(const HeegnerTau& tau);

// Terms needed for sum_{n>B} 2|q|^n < 2^(-bits).
std::size_t terms_for_bits(const HeegnerTau& tau, long bits);

// z(tau) = sum_{n<=B} (a_n/n) q^n plus the tail bound, with B = terms_for_bits.
// The working precision adds guard bits for the loss near |q| = 1.
// Throws PrecisionUnreachable when B exceeds cap.
BigComplex eval_modular_param(CoeffSource& coeffs, const HeegnerTau& tau, long bits, std::size_t cap);

enum class PointProvenance { Computed, Ingested };
std::string to_string(PointProvenance p);

struct HeegnerPointResult {
  QuadPoint point;
  PointProvenance provenance = PointProvenance::Computed;
  long complexPrecisionUsed = 0;  // bits
  bool certified = false;         // exact on-curve check passed
  Integer heightBound = 0;        // denominator bound used in recognition
  long multiplier = 1;            // point is exp(multiplier * z)
  long divisor = 1;               // recognized at exp((multiplier z + w) / divisor), w a period
  bool torsionLimit = false;      // z was a lattice point to working precision
  std::size_t terms = 0;
};

// Rational p/q with q <= H and |x - p/q| <= tol, from the continued fraction
// of x; unique when 2 tol H^2 < 1.
std::optional<Rational> recover_rational(const BigFloat& x, const ErrBound& tol, const Integer& H);

// Recognizes x as u + v sqrt(dK), solves y exactly and picks the sign nearest
// the approximation; certified iff the exact point is on E. Throws RecognitionFailed.
HeegnerPointResult recognize_point(const WeierstrassCurve& E, long dK, const ComplexPoint& approx, const Integer& heightBound);

// Trace of the Heegner points over the class group, recognized over K with
// precision doubling. `known` short-circuits the computation.
HeegnerPointResult heegner_point(const WeierstrassCurve& E, long dK, CoeffSource& coeffs, const HeegnerConfig& cfg = {},
                                 const std::optional<QuadPoint>& known = std::nullopt);
HeegnerPointResult heegner_point(const WeierstrassCurve& E, long dK, const HeegnerConfig& cfg = {},
                                 const std::optional<QuadPoint>& known = std::nullopt);

}  // namespace heeg
