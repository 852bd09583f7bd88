#include "heeg/harness/report.hpp"

#include <sstream>

namespace heeg {

Json to_json(const PadicNumber& x) {
  if (x.is_exact_zero()) return {{"exact_zero", true}};
  Json j;
  j["valuation"] = x.valuation();
  j["unit_digits"] = x.unit_digits(x.relative_precision());
  j["precision"] = x.relative_precision();
  return j;
}

Json to_json(const QuadElem& z) { return {{"u", z.u().get_str()}, {"v", z.v().get_str()}, {"D", z.disc()}}; }

Json to_json(const QuadPoint& P) {
  if (P.infinity) return {{"infinity", true}};
  return {{"x", to_json(P.x)}, {"y", to_json(P.y)}};
}

Json to_json(const HeegnerPointResult& r) {
  Json j;
  j["point"] = to_json(r.point);
  j["provenance"] = to_string(r.provenance);
  j["certified"] = r.certified;
  j["complex_bits"] = r.complexPrecisionUsed;
  j["height_bound"] = r.heightBound.get_str();
  j["multiplier"] = r.multiplier;
  j["divisor"] = r.divisor;
  j["torsion_limit"] = r.torsionLimit;
  j["terms"] = r.terms;
  return j;
}

Json to_json(const StarReport& s) {
  Json j;
  j["curve"] = s.curve;
  j["dK"] = s.dK;
  j["heegner_source"] = s.heegnerSource;
  j["point"] = to_json(s.point);
  j["multiplier"] = s.multiplier;
  j["ns_count_2"] = s.nsCount2.get_str();
  j["log"] = Json::array({to_json(s.logValue[0]), to_json(s.logValue[1])});
  j["normalized"] = Json::array({to_json(s.normalized[0]), to_json(s.normalized[1])});
  j["precision"] = s.precision;
  j["star"] = s.starHolds;
  return j;
}

Json to_json(const CongruenceReport& c) {
  Json j;
  j["curve"] = c.curveE;
  j["twist_curve"] = c.curveEp;
  j["dK"] = c.dK;
  j["p"] = c.p;
  j["m"] = c.m;
  j["M"] = c.M.get_str();
  auto factors = [](const std::vector<std::pair<long, PadicNumber>>& v) {
    Json a = Json::array();
    for (const auto& [ell, f] : v) a.push_back({{"ell", ell}, {"factor", to_json(f)}});
    return a;
  };
  j["euler_E"] = factors(c.eulerE);
  j["euler_twist"] = factors(c.eulerEp);
  j["lhs"] = to_json(c.lhs);
  j["rhs"] = to_json(c.rhs);
  j["normalized_E"] = to_json(c.normalizedE);
  j["normalized_twist"] = to_json(c.normalizedEp);
  j["sign"] = c.sign;
  j["precision"] = c.precision;
  j["verdict"] = c.verdict;
  return j;
}

Json to_json(const BSDPreconditionReport& b) {
  Json j;
  j["curve"] = b.curve;
  j["dK"] = b.dK;
  j["d"] = b.d;
  Json t = Json::object();
  for (const auto& [ell, c] : b.tamagawa) t[std::to_string(ell)] = c;
  j["tamagawa"] = t;
  j["all_tamagawa_odd"] = b.allTamagawaOdd;
  j["c2_odd"] = b.c2Odd;
  j["additive_at_2"] = b.additiveAt2;
  j["manin_odd_assumed"] = b.maninOddAssumed;
  j["disc_sign"] = b.discSign;
  j["chi_d_minus_N"] = b.chiDMinusN;
  j["twist_in_family"] = b.twistInN;
  j["star"] = b.star ? Json(*b.star) : Json(nullptr);
  j["over_K"] = b.overKApplies;
  j["over_Q"] = b.overQApplies;
  j["rank_side_consistent"] = b.rankSideConsistent;
  j["notes"] = b.notes;
  return j;
}

Json to_json(const GoldfeldCount& g) {
  Json j;
  j["curve"] = g.curve;
  j["dK"] = g.dK;
  j["galois"] = to_string(g.galois);
  j["alpha"] = g.alpha;
  j["X"] = g.X;
  j["counts"] = g.counts;
  j["constant"] = g.constant;
  j["max_rel_deviation"] = g.maxRelDeviation;
  j["status"] = g.status();
  return j;
}

Json to_json(const TableReport& t) {
  Json j;
  j["table"] = t.which;
  j["max_conductor"] = t.maxConductor;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["label"] = r.printed.label;
    row["dK"] = r.dK;
    row["c2"] = r.c2;
    row["star"] = r.star ? Json(*r.star) : Json(nullptr);
    row["printed_star"] = r.printed.star;
    row["point"] = r.point;
    row["bits"] = r.bits;
    row["multiplier"] = r.multiplier;
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(row);
  }
  j["rows"] = rows;
  Json diffs = Json::array();
  for (const auto& d : t.diffs) diffs.push_back({{"label", d.label}, {"field", d.field}, {"printed", d.printed}, {"computed", d.computed}});
  j["diffs"] = diffs;
  j["checks"] = t.checks;
  j["printed_checks"] = t.printedChecks;
  j["rows_total"] = t.rows.size();
  j["agrees"] = t.agrees();
  return j;
}

std::string twists_csv(const TwistSet& s) {
  std::ostringstream os;
  os << "d,factors,rank_side\n";
  for (const auto& t : s.twists) {
    os << t.d << ",";
    for (std::size_t i = 0; i < t.factors.size(); ++i) os << (i ? " " : "") << t.factors[i];
    os << "," << to_string(t.side) << "\n";
  }
  return os.str();
}

}  // namespace heeg
