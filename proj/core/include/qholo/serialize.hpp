#pragma once

// JSON text formats for every value the tools emit or read. Integers are written as decimal
// strings so that arbitrarily large coefficients survive other JSON readers.
//
//   polynomial  {"vars": ["a","q"], "terms": [{"coef": "-3", "exps": [1, 2, 0]}]}
//   rational    {"num": <polynomial>, "den": <polynomial>}
//   operator    {"algebra": "Wt" | "W" | "classical", "terms": [[j, <polynomial>], ...]}
//   web         {"vertices": [[d, d, d], ...], "edges": [{"tail": d, "head": d, "color": c}],
//                "loops": [{"color": c, "count": k}]}
//   table       {"id": ..., "braid": ..., "axis": i, "framing": "zero",
//               "shape": "column" or "row" (optional, default column), "values": [<rational>]}
//
// Readers throw ParseError with the byte offset of JSON syntax errors, or 0 for shape errors.

#include <string>

#include "qholo/holonomy.hpp"
#include "qholo/qweyl.hpp"
#include "qholo/rational.hpp"
#include "qholo/web.hpp"

namespace qholo {

std::string to_json(const LaurentPoly& p);
std::string to_json(const RationalFn& f);
std::string to_json(const OreOperator& p);
std::string to_json(const RawWeb& w);
std::string to_json(const SequenceTable& t);

LaurentPoly poly_from_json(const std::string& text);
RationalFn rational_from_json(const std::string& text);
OreOperator operator_from_json(const std::string& text);
RawWeb web_from_json(const std::string& text);
SequenceTable table_from_json(const std::string& text);

}  // namespace qholo
