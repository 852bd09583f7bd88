#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "heeg/exactnum/bigcomplex.hpp"

namespace heeg::kernels {

// Terms per block of the parallel sum; fixed so results do not depend on the
// thread count.
inline constexpr std::size_t kQSumBlock = 1 << 16;

// sum_{n=1}^{B} (a_n / n) q^n at q's precision, for |q| < 1 and |a_n| <= 2n.
// a[n] holds a_n (a[0] unused). The error bound covers rounding and the
// uncertainty in q, not the tail n > B. Throws PrecisionLoss when B times the
// relative error of q is not small.
BigComplex modular_qsum_serial(const std::vector<std::int32_t>& a, std::size_t B, const BigComplex& q);
BigComplex modular_qsum_parallel(const std::vector<std::int32_t>& a, std::size_t B, const BigComplex& q);

// Bound for sum_{n>B} 2 |q|^n, the tail under |a_n / n| <= 2.
ErrBound modular_qsum_tail(std::size_t B, const ErrBound& absQ);

}  // namespace heeg::kernels
