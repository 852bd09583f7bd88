#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heeg/harness/cache.hpp"
#include "heeg/harness/dataset.hpp"
#include "heeg/heegner/heegner.hpp"

namespace heeg {

// A printed row: curve, d_K, c_2 and the star checkmark.
struct PrintedRow {
  std::string label;
  long dK = 0;
  long c2 = 0;
  bool star = false;
};

std::vector<PrintedRow> load_printed_table(const std::string& path);
std::string printed_table_path(int which);

struct TableRow {
  PrintedRow printed;
  long dK = 0;  // d_K used; table 1 rederives the smallest admissible one
  long c2 = 0;
  std::optional<bool> star;  // empty when the computation failed
  std::string error;
  // selection screens: c_p odd for odd p, a_2 even, E(Q)[2] = 0
  bool screenTamagawa = false;
  bool screenA2 = false;
  bool screenTwoTorsion = false;
  std::string point;
  long bits = 0;
  long multiplier = 1;
  double seconds = 0;
};

struct TableDiff {
  std::string label, field, printed, computed;
};

struct TableReport {
  int which = 1;
  long maxConductor = 0;  // 0 for the full table
  std::vector<TableRow> rows;
  std::vector<TableDiff> diffs;
  int checks = 0;
  int printedChecks = 0;
  bool agrees() const { return diffs.empty(); }
};

struct TableOptions {
  long maxConductor = 0;
  long prec = 20;
  HeegnerConfig cfg;
  std::optional<ResultCache> cache;
  std::string printedPath;  // defaults to printed_table_path(which)
};

// Smallest |d_K| (fundamental, d_K < 0, d_K != -3, -4) satisfying the Heegner
// hypothesis for N with 2 split.
long smallest_admissible_dk(const Integer& N);

// Recomputes c_2 and star for each printed row of Table 1 or 2 and diffs
// against the printed values. Throws MissingCurve listing every absent label.
TableReport reproduce_table(int which, const std::vector<CurveRecord>& records, const TableOptions& opt = {});

std::string table_csv(const TableReport& r);

}  // namespace heeg
