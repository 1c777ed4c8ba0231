#include "qholo/serialize.hpp"

#include <json.hpp>

namespace qholo {

using nlohmann::json;

namespace {

constexpr const char* kVarNames[] = {"a", "q", "M"};

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

[[noreturn]] void shape(const std::string& what) { throw ParseError(what, 0); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) shape(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) shape(std::string(what) + " must be an integer");
  return j.get<int>();
}

Integer as_integer(const json& j) {
  Integer c;
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (!j.is_string() || c.set_str(j.get<std::string>(), 10) != 0) shape("coefficient must be an integer or a decimal string");
  return c;
}

json poly_json(const LaurentPoly& p) {
  json vars = json::array();
  for (int v = 0; v < kNumVars; ++v)
    if (p.vars() & var_bit(static_cast<Var>(v))) vars.push_back(kVarNames[v]);
  json terms = json::array();
  for (const auto& t : p.terms()) {
    const Exponents e = LaurentPoly::unpack(t.key);
    terms.push_back({{"coef", t.coef.get_str()}, {"exps", {e[0], e[1], e[2]}}});
  }
  return {{"vars", vars}, {"terms", terms}};
}

LaurentPoly poly_parse(const json& j) {
  VarSet vars = 0;
  for (const auto& v : field(j, "vars")) {
    if (!v.is_string()) shape("variable names must be strings");
    const std::string s = v.get<std::string>();
    bool known = false;
    for (int i = 0; i < kNumVars; ++i)
      if (s == kVarNames[i]) {
        vars |= var_bit(static_cast<Var>(i));
        known = true;
      }
    if (!known) shape("unknown variable \"" + s + "\"");
  }
  const json& terms = field(j, "terms");
  if (!terms.is_array()) shape("\"terms\" must be a list");
  LaurentPoly p(0L);
  for (const auto& t : terms) {
    const json& ex = field(t, "exps");
    if (!ex.is_array() || ex.size() != kNumVars) shape("\"exps\" must list exponents of a, q, M");
    Exponents e{};
    for (int i = 0; i < kNumVars; ++i) {
      e[static_cast<std::size_t>(i)] = as_int(ex[static_cast<std::size_t>(i)], "exponent");
      if (e[static_cast<std::size_t>(i)] != 0 && !(vars & var_bit(static_cast<Var>(i))))
        shape(std::string("exponent of undeclared variable ") + kVarNames[i]);
    }
    p += LaurentPoly::monomial(as_integer(field(t, "coef")), e, vars);
  }
  return p.declare(vars);
}

json rational_json(const RationalFn& f) { return {{"num", poly_json(f.num())}, {"den", poly_json(f.den())}}; }

RationalFn rational_parse(const json& j) {
  const LaurentPoly den = poly_parse(field(j, "den"));
  if (den.is_zero()) shape("zero denominator");
  return RationalFn(poly_parse(field(j, "num")), den);
}

Algebra algebra_parse(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    for (Algebra a : {Algebra::kWt, Algebra::kW, Algebra::kClassical})
      if (s == to_string(a)) return a;
  }
  shape("algebra must be \"Wt\", \"W\" or \"classical\"");
}

}  // namespace

std::string to_json(const LaurentPoly& p) { return poly_json(p).dump(); }
std::string to_json(const RationalFn& f) { return rational_json(f).dump(); }

std::string to_json(const OreOperator& p) {
  json terms = json::array();
  for (int j = 0; j <= p.order(); ++j)
    if (!p.coeff(j).is_zero()) terms.push_back({j, poly_json(p.coeff(j))});
  return json{{"algebra", to_string(p.algebra())}, {"terms", terms}}.dump();
}

std::string to_json(const RawWeb& w) {
  json edges = json::array();
  for (const auto& e : w.edges) edges.push_back({{"tail", e.tail}, {"head", e.head}, {"color", e.color}});
  json loops = json::array();
  for (const auto& [color, count] : w.loops) loops.push_back({{"color", color}, {"count", count}});
  return json{{"vertices", w.vertices}, {"edges", edges}, {"loops", loops}}.dump();
}

std::string to_json(const SequenceTable& t) {
  json values = json::array();
  for (const auto& v : t.values) values.push_back(rational_json(v));
  return json{{"id", t.id},
              {"braid", braid_to_string(t.braid)},
              {"axis", t.axis},
              {"framing", to_string(t.framing)},
              {"shape", t.shape == ComponentColor::kRow ? "row" : "column"},
              {"values", values}}
      .dump();
}

LaurentPoly poly_from_json(const std::string& text) { return poly_parse(parse(text)); }
RationalFn rational_from_json(const std::string& text) { return rational_parse(parse(text)); }

OreOperator operator_from_json(const std::string& text) {
  const json j = parse(text);
  const Algebra alg = algebra_parse(field(j, "algebra"));
  std::vector<LaurentPoly> coeffs;
  for (const auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 2) shape("operator terms are [power, polynomial] pairs");
    const int power = as_int(t[0], "power of L");
    if (power < 0) shape("negative power of L");
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(static_cast<std::size_t>(power) + 1, LaurentPoly(0L));
    coeffs[static_cast<std::size_t>(power)] += poly_parse(t[1]);
  }
  return OreOperator(alg, std::move(coeffs));
}

RawWeb web_from_json(const std::string& text) {
  const json j = parse(text);
  RawWeb w;
  for (const auto& v : field(j, "vertices")) {
    if (!v.is_array()) shape("each vertex is a list of dart ids");
    std::vector<int> darts;
    for (const auto& d : v) darts.push_back(as_int(d, "dart id"));
    w.vertices.push_back(std::move(darts));
  }
  for (const auto& e : field(j, "edges"))
    w.edges.push_back({as_int(field(e, "tail"), "tail"), as_int(field(e, "head"), "head"),
                       as_int(field(e, "color"), "color")});
  if (j.contains("loops"))
    for (const auto& l : j.at("loops")) {
      const int count = as_int(field(l, "count"), "loop count");
      if (count < 0) shape("negative loop count");
      w.loops[as_int(field(l, "color"), "loop color")] += count;
    }
  return w;
}

SequenceTable table_from_json(const std::string& text) {
  const json j = parse(text);
  SequenceTable t;
  const json& id = field(j, "id");
  if (!id.is_string()) shape("\"id\" must be a string");
  t.id = id.get<std::string>();
  const json& braid = field(j, "braid");
  if (!braid.is_string()) shape("\"braid\" must be a braid string");
  t.braid = parse_braid(braid.get<std::string>());
  t.axis = as_int(field(j, "axis"), "axis");
  const json& fr = field(j, "framing");
  if (fr == "zero") t.framing = Framing::kZero;
  else if (fr == "blackboard") t.framing = Framing::kBlackboard;
  else shape("framing must be \"zero\" or \"blackboard\"");
  if (j.contains("shape")) {
    const json& sh = j.at("shape");
    if (sh == "row") t.shape = ComponentColor::kRow;
    else if (sh != "column") shape("shape must be \"column\" or \"row\"");
  }
  for (const auto& v : field(j, "values")) t.values.push_back(rational_parse(v));
  return t;
}

}  // namespace qholo
