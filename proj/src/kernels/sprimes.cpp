#include "heeg/kernels/sprimes.hpp"

#include <omp.h>

#include <algorithm>

#include "heeg/ellcurve/fp.hpp"

namespace heeg::kernels {

namespace {

// x^3 + (b2/4) x^2 + (b4/2) x + b6/4 mod ell has no root iff Frobenius has order 3.
bool frob_order_three(const SPrimeQuery& q, fp::u64 ell) {
  fp::u64 i4 = fp::inv(4, ell), i2 = fp::inv(2, ell);
  fp::u64 b = fp::mul(fp::reduce(q.b2, ell), i4, ell);
  fp::u64 c = fp::mul(fp::reduce(q.b4, ell), i2, ell);
  fp::u64 d = fp::mul(fp::reduce(q.b6, ell), i4, ell);
  return fp::cubic_root_count(b, c, d, ell) == 0;
}

}  // namespace

bool in_s(const SPrimeQuery& q, std::uint64_t ell) {
  if (ell < 3 || fp::reduce(q.N, ell) == 0) return false;
  long dk = q.dK % static_cast<long>(ell);
  if (dk < 0) dk += static_cast<long>(ell);
  if (fp::legendre(static_cast<fp::u64>(dk), ell) != 1) return false;
  return frob_order_three(q, ell);
}

std::vector<std::uint32_t> s_prime_scan_serial(const SPrimeQuery& q, std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t ell : primes_up_to(bound > 0 ? bound - 1 : 0)) {
    if (in_s(q, ell)) out.push_back(ell);
  }
  return out;
}

std::vector<std::uint32_t> s_prime_scan_parallel(const SPrimeQuery& q, std::uint32_t bound) {
  const std::vector<std::uint32_t> primes = primes_up_to(bound > 0 ? bound - 1 : 0);
  std::vector<char> hit(primes.size(), 0);
  const long n = static_cast<long>(primes.size());
#pragma omp parallel for schedule(dynamic, 1024)
  for (long i = 0; i < n; ++i) hit[i] = in_s(q, primes[i]) ? 1 : 0;
  std::vector<std::uint32_t> out;
  for (long i = 0; i < n; ++i) {
    if (hit[i]) out.push_back(primes[i]);
  }
  return out;
}

}  // namespace heeg::kernels
