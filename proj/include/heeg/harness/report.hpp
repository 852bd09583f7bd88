#pragma once

#include <json.hpp>

#include "heeg/exactnum/padic.hpp"
#include "heeg/harness/goldfeld.hpp"
#include "heeg/harness/tables.hpp"
#include "heeg/starcong/starcong.hpp"
#include "heeg/twotors/twotors.hpp"

namespace heeg {

using Json = nlohmann::ordered_json;

// {"valuation", "unit_digits" (least significant first), "precision" (relative)}.
// Exact zero is {"exact_zero": true}.
Json to_json(const PadicNumber& x);
Json to_json(const QuadElem& z);  // {"u": "a/b", "v": "c/d", "D": D}
Json to_json(const QuadPoint& P);
Json to_json(const HeegnerPointResult& r);
Json to_json(const StarReport& s);
Json to_json(const CongruenceReport& c);
Json to_json(const BSDPreconditionReport& b);
Json to_json(const GoldfeldCount& g);
Json to_json(const TableReport& t);

// d,factors,side rows with a header line.
std::string twists_csv(const TwistSet& s);

}  // namespace heeg
