#pragma once

#include <array>
#include <vector>

#include "heeg/exactnum/rational.hpp"

namespace heeg {

// Binary quadratic form [a, b, c] = a x^2 + b xy + c y^2.
using QuadForm = std::array<Integer, 3>;

// SL2(Z)-reduced representative of a positive definite form.
QuadForm reduce_form(const QuadForm& f);
// Reduced primitive positive definite forms of discriminant D < 0, sorted.
std::vector<QuadForm> reduced_forms(long D);
long class_number(long D);

struct HeegnerTau {
  QuadForm form;  // [A, B, C] with N | A
  long dK = 0;
  // tau = (-B + sqrt(dK)) / (2A)
};

// One tau per ideal class, all with the same B mod 2N (B^2 = dK mod 4N, B the
// least nonnegative root), each with the smallest A = N a available, in the
// order of reduced_forms(dK). Throws NoSquareRoot.
std::vector<HeegnerTau> heegner_tau_list(const Integer& N, long dK);

}  // namespace heeg
