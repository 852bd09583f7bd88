#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heeg {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds num/den in lowest terms; throws DivisionByZero on den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& x);

// v_p(n); n must be nonzero.
long valuation(const Integer& n, unsigned long p);
long valuation(const Rational& x, unsigned long p);
Integer ipow(const Integer& base, unsigned long e);
Integer pow_p(unsigned long p, unsigned long e);

int kronecker(const Integer& a, const Integer& n);
bool is_square(const Integer& n);
bool is_square(const Rational& x);
Integer isqrt(const Integer& n);
// Square root of a rational square; empty pair.second when x is not a square.
std::pair<Rational, bool> rational_sqrt(const Rational& x);

bool is_prime(const Integer& n);
bool is_prime_u64(std::uint64_t n);
bool is_squarefree(const Integer& n);
// Trial-division factorization of |n| (n != 0), primes ascending with exponents.
std::vector<std::pair<Integer, unsigned>> factor(const Integer& n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

}  // namespace heeg
