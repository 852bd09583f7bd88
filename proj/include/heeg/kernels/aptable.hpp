#pragma once

#include <cstdint>
#include <vector>

#include "heeg/ellcurve/curve.hpp"

namespace heeg::kernels {

// Primes below this are counted by the x-scan; above it by baby-step giant-step.
inline constexpr std::uint64_t kBsgsThreshold = 1000;

// a_p of y^2 = x^3 + A x + B over F_p (p >= 5, p < 2^31, nonsingular) from the
// group order, found by baby-step giant-step on random points of the curve and
// of its quadratic twist until a single order in the Hasse interval remains.
long ap_short_bsgs(std::uint64_t A, std::uint64_t B, std::uint64_t p);

// a_p of a minimal model, with the +1/-1/0 convention at bad primes.
long ap_fast(const WeierstrassCurve& E, std::uint64_t p);

// a_p for every prime in `primes`. The serial version is the reference.
std::vector<std::int32_t> ap_table_serial(const WeierstrassCurve& E, const std::vector<std::uint32_t>& primes);
std::vector<std::int32_t> ap_table_parallel(const WeierstrassCurve& E, const std::vector<std::uint32_t>& primes);

}  // namespace heeg::kernels
