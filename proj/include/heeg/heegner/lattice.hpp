#pragma once

#include "heeg/ellcurve/curve.hpp"
#include "heeg/exactnum/bigcomplex.hpp"

namespace heeg {

// Period lattice of the invariant differential dx / (2y + a1 x + a3), with a
// basis in which tau = w2 / w1 lies in the standard fundamental domain.
struct PeriodLattice {
  BigComplex w1, w2;
  BigFloat realPeriod;  // least positive real period
  mpfr_prec_t prec = kDefaultComplexBits;
};

PeriodLattice period_lattice(const WeierstrassCurve& E, mpfr_prec_t prec);

struct ComplexPoint {
  bool infinity = false;
  BigComplex x, y;
};

// (x, y) on the model for z mod the lattice. Throws NearPole when z is within
// 2^(-prec/2) of a lattice point.
ComplexPoint elliptic_exp(const WeierstrassCurve& E, const PeriodLattice& L, const BigComplex& z);

}  // namespace heeg
