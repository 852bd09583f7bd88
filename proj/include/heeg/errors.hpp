#pragma once

#include <stdexcept>
#include <string>

namespace heeg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HEEG_ERROR(Name)            \
  struct Name : Error {             \
    using Error::Error;             \
  }

HEEG_ERROR(NotSplit);
HEEG_ERROR(InsufficientPrecision);
HEEG_ERROR(DivisionByZero);
HEEG_ERROR(NonInvertibleDenominator);
HEEG_ERROR(SingularCurve);
HEEG_ERROR(HasRationalTwoTorsion);
HEEG_ERROR(BadPrime);
HEEG_ERROR(CriterionMismatch);
HEEG_ERROR(RootsNotInRing);
HEEG_ERROR(NotDepleted);
HEEG_ERROR(NoSquareRoot);
HEEG_ERROR(PrecisionUnreachable);
HEEG_ERROR(NearPole);
HEEG_ERROR(RecognitionFailed);
HEEG_ERROR(MultiplierOverflow);
HEEG_ERROR(PrecisionLoss);
HEEG_ERROR(UnsupportedPair);
HEEG_ERROR(ParseError);
HEEG_ERROR(ValidationError);
HEEG_ERROR(MissingCurve);

#undef HEEG_ERROR

}  // namespace heeg
