#include "heeg/exactnum/series.hpp"

namespace heeg {

RationalSeries series_integrate_formal(const RationalSeries& s) {
  RationalSeries r(s.order() + 1);
  for (std::size_t n = 0; n < s.order(); ++n) {
    r[n + 1] = s[n] / static_cast<long>(n + 1);
  }
  return r;
}

}  // namespace heeg
