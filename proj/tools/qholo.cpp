// qholo: batch front end for colored invariants, sequence tables and recursions.
//
//   qholo compute homfly   --braid "2;[1,1,1];[1,1]"
//   qholo compute colored  --braid ... --colors row:2
//   qholo compute web-eval --file circle1.web [--N 3]
//   qholo compute table    --braid ... --nmax 6 [--shape row]
//   qholo recur            --braid ... --nmax 10 [--order 1 --mdeg 2 --adeg 2 --qdeg 2] [--Ns 2,3,4]
//   qholo check <suite|all>
//   qholo convert          --file value.json | --braid ...
//
// Every document is JSON with sorted keys (or plain text with --format text) and carries a
// provenance block. Output depends only on the flags and QHOLO_STEP_LIMIT; timings are
// left out unless --timings is given.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "checks/suites.hpp"
#include "qholo/holonomy.hpp"
#include "qholo/serialize.hpp"

#ifndef QHOLO_VERSION
#define QHOLO_VERSION "unknown"
#endif

namespace {

using nlohmann::json;
using namespace qholo;

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kComputation = 3, kInternal = 4 };

struct Global {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  bool timings = false;
};

struct Config {
  std::string braid;
  std::string file;
  std::string colors;
  std::string framing = "blackboard";
  std::string shape = "column";
  int axis = 0;
  int n_max = -1;
  int N = -1;
  int threads = 0;
  // recursion box; -1 means "not given"
  int order = -1, m_deg = -1, a_deg = -1, q_deg = -1;
  int max_order = 2, max_m_deg = 6, max_bound = 8;
  std::vector<int> Ns{2, 3, 4};
  std::string apoly;
  // check
  std::string suite;
  int trials = 0;
  int max_crossings = 8;
};

json embed(const std::string& serialized) { return json::parse(serialized); }

json value_doc(const RationalFn& f) { return {{"value", embed(to_json(f))}, {"display", f.to_string()}}; }
json value_doc(const LaurentPoly& p) { return {{"value", embed(to_json(p))}, {"display", p.to_string()}}; }
json value_doc(const OreOperator& p) { return {{"value", embed(to_json(p))}, {"display", p.to_string()}}; }

long step_limit() { return default_step_limit(); }

json provenance(const Global& g, const std::string& framing) {
  return {{"tool", "qholo"},
          {"version", QHOLO_VERSION},
          {"seed", g.seed},
          {"step_limit", step_limit()},
          {"framing", framing},
          {"conventions",
           {{"unknot", "(a - a^-1)/(q - q^-1)"},
            {"skein", "X(L+) - X(L-) = (q - q^-1) X(L0)"},
            {"curl", "a positive curl on a strand colored 1 multiplies by a"},
            {"colors", "column (1^n) on the exterior power; row (n) via X_rows(a,q) = (-1)^n X_columns(a,1/q)"},
            {"zero_framing", "divide by a^n q^(-n(n-1)) (columns) or a^n q^(n(n-1)) (rows) per unit of self-writhe"},
            {"operators", "M f(n) = q^n f(n), L f(n) = f(n+1), LM = qML"}}}};
}

// ---------------------------------------------------------------------------
// Text rendering: a flat "key: value" listing of the JSON document, with displays preferred
// over serialized values so that text output stays readable.

void render_text(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    if (j.contains("display") && j.contains("value")) {
      os << prefix << ": " << j.at("display").get<std::string>() << "\n";
      return;
    }
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& x : j) scalars = scalars && x.is_primitive();
    if (scalars) {
      os << prefix << ": " << j.dump() << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else if (j.is_string()) {
    os << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Global& g, const json& doc) {
  std::ostringstream os;
  if (g.format == "text") render_text(doc, "", os);
  else os << doc.dump(2) << "\n";
  if (g.out.empty()) {
    std::cout << os.str();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error("cannot write " + g.out);
  f << os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read " + path, 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Framing parse_framing(const std::string& s) { return s == "zero" ? Framing::kZero : Framing::kBlackboard; }
ComponentColor::Kind parse_shape(const std::string& s) {
  return s == "row" ? ComponentColor::kRow : ComponentColor::kColumn;
}

// "1,2" (columns), "col:1,2" or "row:2,3"; empty means the braid's own colors as columns.
ColorSpec parse_colors(const std::string& text, const ColoredBraid& b) {
  ComponentColor::Kind kind = ComponentColor::kColumn;
  std::string list = text;
  if (list.rfind("row:", 0) == 0) {
    kind = ComponentColor::kRow;
    list = list.substr(4);
  } else if (list.rfind("col:", 0) == 0) {
    list = list.substr(4);
  }
  ColorSpec spec;
  if (list.empty()) {
    for (const auto& c : b.cycles()) spec.push_back({kind, b.colors[static_cast<std::size_t>(c.front())]});
    return spec;
  }
  std::size_t pos = 0;
  std::istringstream in(list);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(tok, &used);
      if (used != tok.size() || n < 0) throw std::invalid_argument(tok);
      spec.push_back({kind, n});
    } catch (const std::exception&) {
      throw ParseError("color \"" + tok + "\" is not a nonnegative integer", pos);
    }
    pos += tok.size() + 1;
  }
  if (static_cast<int>(spec.size()) != b.num_components())
    throw ParseError("--colors lists " + std::to_string(spec.size()) + " colors for a link with " +
                         std::to_string(b.num_components()) + " components",
                     0);
  return spec;
}

ColoredBraid braid_for(const Config& c) {
  if (c.braid.empty()) throw ParseError("--braid is required", 0);
  ColoredBraid b = parse_braid(c.braid);
  validate_braid(b);
  return b;
}

json braid_doc(const ColoredBraid& b) {
  return {{"braid", braid_to_string(b)}, {"components", b.num_components()}, {"writhe", b.writhe()},
          {"self_writhes", b.self_writhes()}};
}

// ---------------------------------------------------------------------------
// compute

json cmd_compute(const std::string& what, const Config& c, const Global& g) {
  json doc{{"command", "compute " + what}};
  if (what == "web-eval") {
    if (c.file.empty()) throw ParseError("--file is required", 0);
    const Web w = validate_web(web_from_json(read_file(c.file)));
    doc["provenance"] = provenance(g, "not applicable (closed web)");
    doc["input"] = {{"file", c.file}, {"canonical_code", w.canonical_code()}};
    if (c.N >= 0) {
      doc["input"]["N"] = c.N;
      doc["result"] = value_doc(evaluate_at_N(w, c.N));
    } else {
      doc["result"] = value_doc(evaluate(w));
    }
    return doc;
  }

  ColoredBraid b = braid_for(c);
  const Framing framing = parse_framing(c.framing);
  doc["provenance"] = provenance(g, to_string(framing));
  doc["input"] = braid_doc(b);

  if (what == "homfly" || what == "colored") {
    ColorSpec spec;
    if (what == "homfly") spec.assign(static_cast<std::size_t>(b.num_components()), {ComponentColor::kColumn, 1});
    else spec = parse_colors(c.colors, b);
    json colors = json::array();
    for (const auto& s : spec) colors.push_back({{"shape", s.kind == ComponentColor::kRow ? "row" : "column"}, {"n", s.n}});
    doc["input"]["colors"] = colors;
    const RationalFn v = framed_invariant(b, spec, framing);
    doc["result"] = value_doc(v);
    if (c.N >= 0) {
      const Binding at[] = {Binding::a_to_q_power(c.N)};
      doc["input"]["N"] = c.N;
      doc["result_at_N"] = value_doc(specialize(v, at));
    }
    return doc;
  }

  // table
  if (c.n_max < 0) throw ParseError("--nmax is required", 0);
  TableOptions opts;
  opts.framing = framing;
  opts.shape = parse_shape(c.shape);
  opts.threads = c.threads;
  const SequenceTable t = build_table(b, c.axis, c.n_max, opts);
  doc["input"]["axis"] = c.axis;
  doc["input"]["n_max"] = c.n_max;
  doc["input"]["shape"] = c.shape;
  doc["table"] = {{"value", embed(to_json(t))}, {"display", std::to_string(t.values.size()) + " entries, n = 0.." + std::to_string(t.n_max())}};
  json rows = json::array();
  for (int n = 0; n <= t.n_max(); ++n) rows.push_back({{"n", n}, {"display", t.values[static_cast<std::size_t>(n)].to_string()}});
  doc["entries"] = rows;
  return doc;
}

// ---------------------------------------------------------------------------
// recur

json guess_doc(const GuessReport& r) {
  return {{"fit_indices", r.fit_indices}, {"held_out", r.held_out}, {"unknowns", r.unknowns},
          {"equations", r.equations},     {"rank", r.rank},         {"kernel_dim", r.kernel_dim}};
}

json cmd_recur(const Config& c, const Global& g) {
  const ColoredBraid b = braid_for(c);
  TableOptions opts;
  opts.framing = c.framing == "blackboard" ? Framing::kBlackboard : Framing::kZero;
  opts.shape = parse_shape(c.shape);
  opts.threads = c.threads;
  const int n_max = c.n_max >= 0 ? c.n_max : 10;

  json doc{{"command", "recur"}, {"provenance", provenance(g, to_string(opts.framing))}};
  doc["input"] = braid_doc(b);
  doc["input"]["axis"] = c.axis;
  doc["input"]["n_max"] = n_max;
  doc["input"]["shape"] = c.shape;
  doc["input"]["Ns"] = c.Ns;

  const SequenceTable t = build_table(b, c.axis, n_max, opts);

  std::optional<OreOperator> op;
  GuessReport report;
  RecursionAnsatz ansatz;
  const bool single = c.order >= 0 || c.m_deg >= 0 || c.a_deg >= 0 || c.q_deg >= 0;
  try {
    if (single) {
      ansatz = {c.order >= 0 ? c.order : 1, c.m_deg >= 0 ? c.m_deg : 2, c.a_deg >= 0 ? c.a_deg : 2,
                c.q_deg >= 0 ? c.q_deg : 2};
      doc["input"]["ansatz"] = ansatz.to_string();
      op = guess_recursion(t, ansatz, &report);
    } else {
      doc["input"]["search_limits"] = {{"max_order", c.max_order}, {"max_m_deg", c.max_m_deg}, {"max_bound", c.max_bound}};
      const SearchResult s = search_recursion(t, {c.max_order, c.max_m_deg, c.max_bound});
      json tried = json::array();
      for (const auto& a : s.exhausted) tried.push_back(a.to_string());
      doc["search"] = {{"exhausted", tried}};
      if (s.stopped) doc["search"]["stopped"] = {{"reason", s.stopped->what()}, {"required_n_max", s.stopped->required_n_max()}};
      op = s.op;
      ansatz = s.ansatz;
      report = s.report;
    }
  } catch (const InsufficientData& e) {
    doc["outcome"] = "insufficient_data";
    doc["reason"] = e.what();
    doc["required_n_max"] = e.required_n_max();
    return doc;
  }

  if (!op) {
    doc["outcome"] = "none_found";
    doc["reason"] = single ? "no recursion within the ansatz " + ansatz.to_string()
                           : "no recursion within the search limits";
    if (single) doc["guess"] = guess_doc(report);
    return doc;
  }

  doc["outcome"] = "found";
  doc["ansatz"] = ansatz.to_string();
  doc["guess"] = guess_doc(report);
  doc["operator"] = value_doc(*op);

  const VerifyReport v = verify_recursion(*op, t, report.fit_indices.empty() ? -1 : report.fit_indices.back());
  doc["verify"] = {{"pass", v.pass}, {"first_failing", v.first_failing}, {"checked", v.checked}, {"held_out", v.held_out}};

  const SpecializationReport sp = specialization_suite(*op, t, c.Ns);
  json per = json::array();
  for (const auto& x : sp.per_N)
    per.push_back({{"N", x.N}, {"annihilates", x.annihilates}, {"first_failing", x.first_failing},
                   {"classical", value_doc(x.classical)}});
  doc["specialization"] = {{"pass", sp.pass}, {"classical_agree", sp.classical_agree},
                           {"classical", value_doc(sp.classical)}, {"per_N", per}};

  if (!c.apoly.empty()) {
    const ConjectureReport cr = conjecture_report(*op, parse_apoly(read_file(c.apoly)));
    json r{{"label", ConjectureReport::kLabel}, {"notation", "polynomials in M and L, with L printed as a"}, {"classical", value_doc(cr.classical)}, {"supplied", value_doc(cr.supplied)},
           {"divides", cr.divides}, {"finding", cr.finding}};
    if (cr.quotient) r["quotient"] = value_doc(*cr.quotient);
    doc["conjecture"] = r;
  }
  return doc;
}

// ---------------------------------------------------------------------------
// check

std::pair<json, bool> cmd_check(const Config& c, const Global& g) {
  checks::Options o;
  o.seed = g.seed;
  o.trials = c.trials;
  o.max_crossings = c.max_crossings;
  o.n_max = c.n_max;
  o.Ns = c.Ns;
  const std::vector<std::string> names = c.suite == "all" ? checks::suite_names() : std::vector<std::string>{c.suite};
  json results = json::array();
  bool pass = true;
  for (const auto& name : names) {
    const checks::SuiteResult r = checks::run(name, o);
    json x{{"suite", name}, {"criterion", r.id}, {"pass", r.pass}, {"cases", r.cases}, {"detail", r.detail}};
    if (g.timings) x["seconds"] = r.seconds;
    if (r.limit_seconds > 0) x["limit_seconds"] = r.limit_seconds;
    results.push_back(x);
    pass = pass && r.pass;
  }
  json doc{{"command", "check " + c.suite}, {"provenance", provenance(g, "per suite")}, {"pass", pass}, {"results", results}};
  doc["input"] = {{"trials", c.trials}, {"max_crossings", c.max_crossings}, {"n_max", c.n_max}, {"Ns", c.Ns}};
  return {doc, pass};
}

// ---------------------------------------------------------------------------
// convert: normalizes a serialized value (kind detected from its fields) or a braid string.

json cmd_convert(const Config& c, const Global& g) {
  json doc{{"command", "convert"}, {"provenance", provenance(g, "unchanged")}};
  if (!c.braid.empty()) {
    const ColoredBraid b = braid_for(c);
    doc["kind"] = "braid";
    doc["result"] = braid_doc(b);
    doc["result"]["json"] = {{"strands", b.strands}, {"word", b.word}, {"colors", b.colors}};
    return doc;
  }
  if (c.file.empty()) throw ParseError("convert needs --file or --braid", 0);
  const std::string text = read_file(c.file);
  json probe;
  try {
    probe = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  // A document written by this tool: convert the value it carries.
  std::string body = text;
  if (probe.contains("command")) {
    bool found = false;
    for (const char* key : {"table", "operator", "result"})
      if (probe.contains(key) && probe.at(key).contains("value")) {
        probe = probe.at(key).at("value");
        body = probe.dump();
        found = true;
        break;
      }
    if (!found) throw ParseError(c.file + " is a qholo document without a convertible value", 0);
  }
  const std::string& text_in = body;
  if (probe.contains("values")) {
    const SequenceTable t = table_from_json(text_in);
    doc["kind"] = "table";
    doc["result"] = {{"value", embed(to_json(t))}, {"display", t.id + ", " + std::to_string(t.values.size()) + " entries"}};
  } else if (probe.contains("vertices")) {
    const Web w = validate_web(web_from_json(text_in));
    doc["kind"] = "web";
    doc["result"] = {{"value", embed(to_json(w.to_raw()))}, {"display", w.canonical_code()}};
  } else if (probe.contains("algebra")) {
    doc["kind"] = "operator";
    doc["result"] = value_doc(operator_from_json(text_in));
  } else if (probe.contains("num")) {
    doc["kind"] = "rational";
    doc["result"] = value_doc(rational_from_json(text_in));
  } else if (probe.contains("vars")) {
    doc["kind"] = "polynomial";
    doc["result"] = value_doc(poly_from_json(text_in));
  } else {
    throw ParseError("cannot tell which kind of value " + c.file + " holds", 0);
  }
  return doc;
}

int report_error(const Global& g, const std::string& kind, const std::string& message, int code,
                 const json& extra = json::object()) {
  json err{{"kind", kind}, {"message", message}, {"exit_code", code}};
  err.update(extra);
  if (g.format == "text") std::cerr << "error (" << kind << "): " << message << "\n";
  else std::cerr << json{{"error", err}}.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  Config c;
  CLI::App app{"qholo: colored link invariants, MOY web evaluation and q-holonomic recursions"};
  app.set_version_flag("--version", QHOLO_VERSION);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", g.out, "Write the document to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_flag("--timings", g.timings, "Include wall-clock timings (breaks byte-identical output)");

  auto add_braid = [&](CLI::App* s) { s->add_option("--braid", c.braid, "Colored braid, e.g. \"2;[1,1,1];[1,1]\""); };
  auto add_table = [&](CLI::App* s) {
    s->add_option("--nmax", c.n_max, "Largest color in the table")->check(CLI::NonNegativeNumber);
    s->add_option("--axis", c.axis, "Component whose color varies")->check(CLI::NonNegativeNumber);
    s->add_option("--shape", c.shape, "Color shape along the axis")->check(CLI::IsMember({"column", "row"}));
    s->add_option("--threads", c.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  };

  auto* compute = app.add_subcommand("compute", "Evaluate an invariant, a web or a sequence table");
  std::string what;
  compute->add_option("what", what, "homfly | colored | web-eval | table")
      ->required()
      ->check(CLI::IsMember({"homfly", "colored", "web-eval", "table"}));
  add_braid(compute);
  add_table(compute);
  compute->add_option("--colors", c.colors, "Per-component colors: \"1,2\", \"col:1,2\" or \"row:2,3\"");
  compute->add_option("--file", c.file, "Web file for web-eval");
  compute->add_option("--N", c.N, "Also specialize a = q^N")->check(CLI::NonNegativeNumber);
  compute->add_option("--framing", c.framing, "Framing of the result")->check(CLI::IsMember({"blackboard", "zero"}));

  auto* recur = app.add_subcommand("recur", "Guess, verify and specialize a recursion for a colored knot");
  add_braid(recur);
  add_table(recur);
  recur->add_option("--order", c.order, "Ansatz order in L")->check(CLI::NonNegativeNumber);
  recur->add_option("--mdeg", c.m_deg, "Ansatz degree in M")->check(CLI::NonNegativeNumber);
  recur->add_option("--adeg", c.a_deg, "Ansatz degree in a")->check(CLI::NonNegativeNumber);
  recur->add_option("--qdeg", c.q_deg, "Ansatz degree in q")->check(CLI::NonNegativeNumber);
  recur->add_option("--max-order", c.max_order, "Search limit on the order")->check(CLI::NonNegativeNumber);
  recur->add_option("--max-mdeg", c.max_m_deg, "Search limit on the M-degree")->check(CLI::NonNegativeNumber);
  recur->add_option("--max-bound", c.max_bound, "Search limit on the a- and q-degrees")->check(CLI::NonNegativeNumber);
  recur->add_option("--Ns", c.Ns, "Ranks N for the a = q^N specializations")->delimiter(',');
  recur->add_option("--apoly", c.apoly, "JSON A-polynomial for the conjecture experiment");
  std::string recur_framing = "zero";
  recur->add_option("--framing", recur_framing, "Framing of the table")->check(CLI::IsMember({"blackboard", "zero"}));

  auto* check = app.add_subcommand("check", "Run an acceptance suite; exit 0 iff it passes");
  std::vector<std::string> suites = checks::suite_names();
  suites.push_back("all");
  check->add_option("suite", c.suite, "Suite name or \"all\"")->required()->check(CLI::IsMember(suites));
  check->add_option("--trials", c.trials, "Randomized cases (0: suite default)")->check(CLI::NonNegativeNumber);
  check->add_option("--max-crossings", c.max_crossings, "Crossing bound for the link corpus")->check(CLI::NonNegativeNumber);
  check->add_option("--nmax", c.n_max, "Table length for the recursion suites")->check(CLI::NonNegativeNumber);
  check->add_option("--Ns", c.Ns, "Ranks N for the specialization suites")->delimiter(',');

  auto* convert = app.add_subcommand("convert", "Normalize a serialized value or a braid");
  convert->add_option("--file", c.file, "JSON value: polynomial, rational, operator, web or table");
  add_braid(convert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(g, "usage", e.what(), kBadInput);
  }
  for (int N : c.Ns)
    if (N < 1) return report_error(g, "usage", "--Ns entries must be positive", kBadInput);

  try {
    if (compute->parsed()) {
      emit(g, cmd_compute(what, c, g));
    } else if (recur->parsed()) {
      c.framing = recur_framing;
      emit(g, cmd_recur(c, g));
    } else if (check->parsed()) {
      auto [doc, pass] = cmd_check(c, g);
      emit(g, doc);
      return pass ? kOk : kCheckFailed;
    } else {
      emit(g, cmd_convert(c, g));
    }
  } catch (const ParseError& e) {
    return report_error(g, "parse", e.what(), kBadInput, {{"position", e.position()}});
  } catch (const WebError& e) {
    return report_error(g, "web", e.what(), kBadInput);
  } catch (const StepLimitError& e) {
    return report_error(g, "step_limit", e.what(), kComputation, {{"step_limit", step_limit()}});
  } catch (const StuckError& e) {
    return report_error(g, "stuck", e.what(), kComputation);
  } catch (const Error& e) {
    return report_error(g, "error", e.what(), kComputation);
  } catch (const std::exception& e) {
    return report_error(g, "internal", e.what(), kInternal);
  }
  return kOk;
}
