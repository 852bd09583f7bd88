#include "heeg/harness/tables.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "heeg/ellcurve/count.hpp"
#include "heeg/errors.hpp"
#include "heeg/exactnum/quad.hpp"
#include "heeg/starcong/starcong.hpp"
#include "heeg/twotors/twotors.hpp"

namespace heeg {

std::vector<PrintedRow> load_printed_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open printed table " + path);
  std::vector<PrintedRow> rows;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (++n == 1 || line.empty()) continue;  // header
    std::stringstream ss(line);
    std::string f[4];
    for (auto& s : f) {
      if (!std::getline(ss, s, ',')) throw ParseError(path + ":" + std::to_string(n) + ": expected label,dK,c2,star");
    }
    try {
      rows.push_back({f[0], std::stol(f[1]), std::stol(f[2]), f[3] == "1"});
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(n) + ": bad number");
    }
  }
  return rows;
}

std::string printed_table_path(int which) { return default_data_dir() + "/table" + std::to_string(which) + ".csv"; }

long smallest_admissible_dk(const Integer& N) {
  for (long d = 5;; ++d) {
    const long D = -d;
    if (D == -3 || D == -4 || !is_fundamental_discriminant(D)) continue;
    if (two_splits(D) && heegner_hypothesis(D, N)) return D;
  }
}

namespace {

TableRow run_row(const PrintedRow& pr, const CurveRecord& rec, int which, const TableOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  TableRow row;
  row.printed = pr;
  const WeierstrassCurve& E = rec.curve;
  row.c2 = E.reduction(2).tamagawa;
  row.dK = which == 1 ? smallest_admissible_dk(E.conductor()) : -7;
  row.screenTamagawa = true;
  for (long ell : E.bad_primes()) {
    if (ell != 2 && E.reduction(ell).tamagawa % 2 == 0) row.screenTamagawa = false;
  }
  row.screenA2 = a_ell(E, 2) % 2 == 0;
  try {
    (void)analyze_two_torsion(E);
    row.screenTwoTorsion = true;
  } catch (const HasRationalTwoTorsion&) {
    row.screenTwoTorsion = false;
  }
  try {
    CachedCoeffSource coeffs(E, opt.cache);
    HeegnerPointResult hp = cached_heegner_point(E, row.dK, coeffs, opt.cfg, rec.known_point(row.dK), opt.cache);
    StarReport s = star_from_point(E, row.dK, hp, opt.prec);
    row.star = s.starHolds;
    row.point = to_string(hp.point);
    row.bits = hp.complexPrecisionUsed;
    row.multiplier = hp.multiplier;
  } catch (const Error& e) {
    row.error = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

TableReport reproduce_table(int which, const std::vector<CurveRecord>& records, const TableOptions& opt) {
  if (which != 1 && which != 2) throw std::invalid_argument("table must be 1 or 2");
  const auto printed = load_printed_table(opt.printedPath.empty() ? printed_table_path(which) : opt.printedPath);
  std::string missing;
  for (const auto& pr : printed) {
    bool found = false;
    for (const auto& r : records) found = found || r.label == pr.label;
    if (!found) missing += (missing.empty() ? "" : ", ") + pr.label;
  }
  if (!missing.empty()) throw MissingCurve("dataset lacks " + missing);

  TableReport rep;
  rep.which = which;
  rep.maxConductor = opt.maxConductor;
  for (const auto& pr : printed) {
    const CurveRecord& rec = find_record(records, pr.label);
    if (opt.maxConductor > 0 && rec.conductor > opt.maxConductor) continue;
    TableRow row = run_row(pr, rec, which, opt);
    auto diff = [&](const char* field, const std::string& a, const std::string& b) {
      if (a != b) rep.diffs.push_back({pr.label, field, a, b});
    };
    diff("dK", std::to_string(pr.dK), std::to_string(row.dK));
    diff("c2", std::to_string(pr.c2), std::to_string(row.c2));
    diff("star", pr.star ? "1" : "0", row.star ? (*row.star ? "1" : "0") : "error: " + row.error);
    if (!row.screenTamagawa || !row.screenA2 || !row.screenTwoTorsion) {
      diff("screens", "pass", std::string(row.screenTamagawa ? "" : "c_p ") + (row.screenA2 ? "" : "a_2 ") +
                                  (row.screenTwoTorsion ? "" : "E[2]"));
    }
    if (pr.star) ++rep.printedChecks;
    if (row.star.value_or(false)) ++rep.checks;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string table_csv(const TableReport& r) {
  std::ostringstream os;
  os << "label,dK,c2,star,printed_star,bits,multiplier,point\n";
  for (const auto& row : r.rows) {
    os << row.printed.label << "," << row.dK << "," << row.c2 << ","
       << (row.star ? (*row.star ? "1" : "0") : "error") << "," << (row.printed.star ? 1 : 0) << "," << row.bits << ","
       << row.multiplier << ",\"" << row.point << "\"\n";
  }
  return os.str();
}

}  // namespace heeg
