#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heeg/ellcurve/curve.hpp"
#include "heeg/twotors/twotors.hpp"

namespace heeg {

struct GoldfeldCount {
  std::string curve;
  long dK = 0;
  GaloisType galois = GaloisType::S3;
  double alpha = 1.0 / 6;  // 1/6 for S3, 1/3 for C3
  std::vector<long> X;
  std::vector<long> counts;  // #{d in N : |d| < X}
  double constant = 0;       // least-squares fit of count log^(1-alpha) X / X on the upper half
  double maxRelDeviation = 0;
  bool conditional = false;  // star verified, so the counts bound rank-0/1 twists
  std::string status() const { return conditional ? "star-verified" : "unconditional-count-only"; }
};

// Log-spaced grid of gridSteps values from 100 (or Xmax if smaller) to Xmax.
std::vector<long> goldfeld_grid(long Xmax, int gridSteps);

GoldfeldCount goldfeld_count(const WeierstrassCurve& E, long dK, long Xmax, int gridSteps, std::optional<bool> star = std::nullopt);

}  // namespace heeg
