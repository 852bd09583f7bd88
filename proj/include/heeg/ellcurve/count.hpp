#pragma once

#include "heeg/ellcurve/curve.hpp"

namespace heeg {

// |E~(F_ell)| for the reduction of an ell-integral model, singular point
// included, by an x-scan with quadratic-character counting.
Integer count_points(const WeierstrassCurve& E, long ell);

// Trace of Frobenius; at bad primes the +1 / -1 / 0 convention.
long a_ell(const WeierstrassCurve& E, long ell);

// |E~ns(F_ell)|.
Integer ns_count(const WeierstrassCurve& E, long ell);

// Brute-force count of nonsingular affine points plus infinity; reference for ns_count.
long ns_count_bruteforce(const WeierstrassCurve& E, long ell);

}  // namespace heeg
