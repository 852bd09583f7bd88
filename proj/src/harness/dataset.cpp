#include "heeg/harness/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "heeg/errors.hpp"

namespace heeg {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::stringstream ss(s);
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + ": '" + s + "'");
  }
}

bool parse_flag(const std::string& s, const std::string& what) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError("bad " + what + ": '" + s + "'");
}

std::pair<long, QuadPoint> parse_point(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("heegner point needs dK:xu,xv,yu,yv");
  const long dK = parse_long(s.substr(0, colon), "dK");
  auto parts = split(s.substr(colon + 1), ',');
  if (parts.size() != 4) throw ParseError("heegner point needs four rationals");
  Rational q[4];
  for (int i = 0; i < 4; ++i) q[i] = parse_rational(parts[i]);
  return {dK, QuadPoint::affine(QuadElem(dK, q[0], q[1]), QuadElem(dK, q[2], q[3]))};
}

}  // namespace

std::optional<QuadPoint> CurveRecord::known_point(long dK) const {
  auto it = heegnerPoints.find(dK);
  if (it == heegnerPoints.end()) return std::nullopt;
  return it->second;
}

CurveRecord parse_record(const std::string& text, int line) {
  const std::string where = "line " + std::to_string(line) + ": ";
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(where + "expected key=value, got '" + tok + "'");
    if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) throw ParseError(where + "duplicate key " + tok.substr(0, eq));
  }
  if (!kv.count("label") || !kv.count("ainvs")) throw ParseError(where + "label and ainvs are required");
  auto make = [&]() -> WeierstrassCurve {
    try {
      return WeierstrassCurve::parse(kv["ainvs"], kv["label"]);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    } catch (const SingularCurve& e) {
      throw ValidationError(where + kv["label"] + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + e.what());
    }
  };
  CurveRecord r{.label = kv["label"], .curve = make()};
  r.line = line;
  try {
    for (const auto& [k, v] : kv) {
      if (k == "label" || k == "ainvs") continue;
      if (k == "conductor") {
        r.conductor = Integer(v);
      } else if (k == "tamagawa") {
        for (const auto& item : split(v, ',')) {
          auto c = item.find(':');
          if (c == std::string::npos) throw ParseError("tamagawa entries are p:c");
          r.tamagawa[parse_long(item.substr(0, c), "prime")] = parse_long(item.substr(c + 1), "tamagawa number");
        }
      } else if (k == "galois") {
        if (v == "S3") r.galois = GaloisType::S3;
        else if (v == "C3") r.galois = GaloisType::C3;
        else throw ParseError("galois must be S3 or C3");
      } else if (k == "optimal") {
        r.isOptimal = parse_flag(v, k);
      } else if (k == "manin_odd") {
        r.maninOdd = parse_flag(v, k);
      } else if (k == "heegner") {
        for (const auto& item : split(v, '|')) r.heegnerPoints.insert(parse_point(item));
      } else {
        throw ParseError("unknown key '" + k + "'");
      }
    }
  } catch (const ParseError& e) {
    throw ParseError(where + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + e.what());
  }

  // cross-check everything supplied against recomputation
  auto fail = [&](const std::string& msg) { throw ValidationError(where + r.label + ": " + msg); };
  const Integer N = r.curve.conductor();
  if (r.conductor == 0) r.conductor = N;
  else if (r.conductor != N) fail("conductor " + r.conductor.get_str() + " but Tate's algorithm gives " + N.get_str());
  for (const auto& [p, c] : r.tamagawa) {
    if (N % p != 0) fail("tamagawa number given at good prime " + std::to_string(p));
    const long got = r.curve.reduction(p).tamagawa;
    if (got != c) fail("c_" + std::to_string(p) + " = " + std::to_string(c) + " but Tate's algorithm gives " + std::to_string(got));
  }
  if (r.galois) {
    try {
      if (analyze_two_torsion(r.curve).galoisType != *r.galois) fail("Galois type mismatch");
    } catch (const HasRationalTwoTorsion&) {
      fail("Galois type given but E(Q)[2] is nontrivial");
    }
  }
  for (const auto& [dK, P] : r.heegnerPoints) {
    if (!on_curve(Model<QuadElem>(r.curve, {dK}), P)) fail("Heegner point for dK = " + std::to_string(dK) + " is not on the curve");
  }
  return r;
}

std::vector<CurveRecord> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset " + path);
  std::vector<CurveRecord> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_record(line, n));
  }
  return out;
}

std::string default_data_dir() {
  if (const char* d = std::getenv("HEEG_DATA_DIR")) return d;
  return HEEG_DATA_DIR;
}

std::string default_dataset_path() { return default_data_dir() + "/curves.dat"; }

const CurveRecord& find_record(const std::vector<CurveRecord>& records, const std::string& label) {
  for (const auto& r : records) {
    if (r.label == label) return r;
  }
  throw MissingCurve("curve " + label + " is not in the dataset");
}

}  // namespace heeg
