#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heeg/ellcurve/curve.hpp"
#include "heeg/ellcurve/point.hpp"
#include "heeg/twotors/twotors.hpp"

namespace heeg {

// One line of the dataset:
//   label=11a1 ainvs=0,-1,1,-10,-20 conductor=11 tamagawa=11:5 galois=S3
//   optimal=1 manin_odd=1 heegner=-7:1/2,-1/2,-2,-2
// Only label and ainvs are required. A heegner value is dK:xu,xv,yu,yv for
// x = xu + xv sqrt(dK); several are separated by '|'.
struct CurveRecord {
  std::string label;
  WeierstrassCurve curve;
  Integer conductor = 0;
  bool isOptimal = true;
  bool maninOdd = true;
  std::map<long, long> tamagawa = {};  // as supplied; empty if absent
  std::optional<GaloisType> galois = std::nullopt;
  std::map<long, QuadPoint> heegnerPoints = {};  // keyed by dK
  int line = 0;

  std::optional<QuadPoint> known_point(long dK) const;
};

// Parses and cross-checks one record. Throws ParseError or ValidationError.
CurveRecord parse_record(const std::string& text, int line = 0);
std::vector<CurveRecord> load_dataset(const std::string& path);

// Default dataset: $HEEG_DATA_DIR/curves.dat, else the source tree's data/.
std::string default_data_dir();
std::string default_dataset_path();

const CurveRecord& find_record(const std::vector<CurveRecord>& records, const std::string& label);

}  // namespace heeg
