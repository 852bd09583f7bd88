#pragma once

#include <cstdint>
#include <vector>

#include "heeg/exactnum/rational.hpp"

namespace heeg::kernels {

// Data for testing membership of a prime in the twist set S.
struct SPrimeQuery {
  Integer b2, b4, b6;  // integral model
  Integer N;           // conductor
  long dK = 0;
};

// Whether the odd prime ell, not dividing N, splits in K and has Frobenius of
// order 3 on E[2].
bool in_s(const SPrimeQuery& q, std::uint64_t ell);

// Members of S below `bound`, ascending. The serial version is the reference.
std::vector<std::uint32_t> s_prime_scan_serial(const SPrimeQuery& q, std::uint32_t bound);
std::vector<std::uint32_t> s_prime_scan_parallel(const SPrimeQuery& q, std::uint32_t bound);

}  // namespace heeg::kernels
