#include "heeg/harness/pipeline.hpp"

#include "heeg/errors.hpp"

namespace heeg {

CurveRecord resolve_curve(const std::string& text, const std::vector<CurveRecord>& records) {
  if (!text.empty() && (text[0] == '[' || text.find(',') != std::string::npos)) {
    WeierstrassCurve E = minimal_model(WeierstrassCurve::parse(text));
    E.set_label("[" + E.ainvs_string() + "]");
    return CurveRecord{.label = E.label(), .curve = E, .conductor = E.conductor()};
  }
  return find_record(records, text);
}

WeierstrassCurve twist_curve(const WeierstrassCurve& E, long d) {
  WeierstrassCurve T = minimal_model(quadratic_twist(E, d));
  T.set_label(E.label() + "^(" + std::to_string(d) + ")");
  return T;
}

StarRun run_star(const CurveRecord& rec, long dK, long prec, const HeegnerConfig& cfg, const std::optional<ResultCache>& cache) {
  const WeierstrassCurve& E = rec.curve;
  (void)analyze_two_torsion(E);
  if (!two_splits(dK)) throw NotSplit("2 does not split in Q(sqrt(" + std::to_string(dK) + "))");
  if (!heegner_hypothesis(dK, E.conductor())) throw std::invalid_argument("Heegner hypothesis fails for " + E.label());
  CachedCoeffSource coeffs(E, cache);
  StarRun r;
  r.point = cached_heegner_point(E, dK, coeffs, cfg, rec.known_point(dK), cache);
  r.star = star_from_point(E, dK, r.point, prec);
  return r;
}

CongruenceRun run_congruence(const CurveRecord& rec, long d, long dK, long m, long prec, const HeegnerConfig& cfg,
                             const std::optional<ResultCache>& cache) {
  const WeierstrassCurve& E = rec.curve;
  if (!is_fundamental_discriminant(d)) throw std::invalid_argument("twist must be a fundamental discriminant");
  CongruenceRun r{.twist = twist_curve(E, d)};
  auto base = std::make_shared<CachedCoeffSource>(E, cache);
  r.P = cached_heegner_point(E, dK, *base, cfg, rec.known_point(dK), cache);
  TwistCoeffSource twisted(base, d);
  r.Pd = cached_heegner_point(r.twist, dK, twisted, cfg, std::nullopt, cache);
  CongruencePair pair{E, r.twist, d, false};
  r.report = verify_main_congruence(pair, dK, 2, m, r.P, r.Pd, prec);
  r.bsd = bsd_preconditions(E, dK, d, rec.maninOdd, star_from_point(E, dK, r.P, prec).starHolds);
  return r;
}

}  // namespace heeg
