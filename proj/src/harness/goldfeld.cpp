#include "heeg/harness/goldfeld.hpp"

#include <algorithm>
#include <cmath>

namespace heeg {

std::vector<long> goldfeld_grid(long Xmax, int gridSteps) {
  std::vector<long> g;
  if (Xmax < 1 || gridSteps < 1) return g;
  const double lo = std::log(std::min<double>(100.0, static_cast<double>(Xmax)));
  const double hi = std::log(static_cast<double>(Xmax));
  for (int i = 0; i < gridSteps; ++i) {
    const double t = gridSteps == 1 ? 1.0 : static_cast<double>(i) / (gridSteps - 1);
    long x = std::lround(std::exp(lo + t * (hi - lo)));
    if (i == gridSteps - 1) x = Xmax;
    if (g.empty() || x > g.back()) g.push_back(x);
  }
  return g;
}

GoldfeldCount goldfeld_count(const WeierstrassCurve& E, long dK, long Xmax, int gridSteps, std::optional<bool> star) {
  GoldfeldCount r;
  r.curve = E.label();
  r.dK = dK;
  r.galois = analyze_two_torsion(E).galoisType;
  r.alpha = r.galois == GaloisType::S3 ? 1.0 / 6 : 1.0 / 3;
  r.conditional = star.value_or(false);
  r.X = goldfeld_grid(Xmax, gridSteps);
  r.counts = count_twists(E, dK, r.X);
  std::vector<double> y;
  for (std::size_t i = r.X.size() / 2; i < r.X.size(); ++i) {
    const double x = static_cast<double>(r.X[i]);
    y.push_back(static_cast<double>(r.counts[i]) * std::pow(std::log(x), 1 - r.alpha) / x);
  }
  if (y.empty()) return r;
  double s = 0;
  for (double v : y) s += v;
  r.constant = s / static_cast<double>(y.size());
  if (r.constant > 0) {
    for (double v : y) r.maxRelDeviation = std::max(r.maxRelDeviation, std::abs(v - r.constant) / r.constant);
  }
  return r;
}

}  // namespace heeg
