#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heeg/harness/cache.hpp"
#include "heeg/harness/dataset.hpp"
#include "heeg/starcong/starcong.hpp"

namespace heeg {

// A dataset label, or a-invariants such as "[0,0,1,-1,0]" (minimalized).
CurveRecord resolve_curve(const std::string& text, const std::vector<CurveRecord>& records);

WeierstrassCurve twist_curve(const WeierstrassCurve& E, long d);

struct StarRun {
  HeegnerPointResult point;
  StarReport star;
};

StarRun run_star(const CurveRecord& rec, long dK, long prec, const HeegnerConfig& cfg, const std::optional<ResultCache>& cache);

struct CongruenceRun {
  WeierstrassCurve twist;
  HeegnerPointResult P = {}, Pd = {};
  CongruenceReport report = {};
  BSDPreconditionReport bsd = {};
};

// Heegner points of E and of E^(d) are computed separately, the latter from
// the twisted coefficients chi_d(n) a_n on the twist's own lattice.
CongruenceRun run_congruence(const CurveRecord& rec, long d, long dK, long m, long prec, const HeegnerConfig& cfg,
                             const std::optional<ResultCache>& cache);

}  // namespace heeg
