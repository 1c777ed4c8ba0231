#include "qholo/link.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include <json.hpp>

namespace qholo {

// ---------------------------------------------------------------------------
// Braids

namespace {

// Where each bottom position's strand ends up on top, after the whole word.
std::vector<int> top_of(const ColoredBraid& b) {
  std::vector<int> ids(static_cast<std::size_t>(b.strands));
  for (int p = 0; p < b.strands; ++p) ids[static_cast<std::size_t>(p)] = p;
  for (int g : b.word) {
    const auto i = static_cast<std::size_t>(std::abs(g) - 1);
    std::swap(ids[i], ids[i + 1]);
  }
  std::vector<int> top(static_cast<std::size_t>(b.strands));
  for (int p = 0; p < b.strands; ++p) top[static_cast<std::size_t>(ids[static_cast<std::size_t>(p)])] = p;
  return top;
}

}  // namespace

std::vector<std::vector<int>> ColoredBraid::cycles() const {
  const std::vector<int> next = top_of(*this);
  std::vector<bool> seen(static_cast<std::size_t>(strands), false);
  std::vector<std::vector<int>> out;
  for (int p = 0; p < strands; ++p) {
    if (seen[static_cast<std::size_t>(p)]) continue;
    out.emplace_back();
    for (int x = p; !seen[static_cast<std::size_t>(x)]; x = next[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      out.back().push_back(x);
    }
  }
  return out;
}

std::vector<int> ColoredBraid::component_of_position() const {
  std::vector<int> comp(static_cast<std::size_t>(strands), -1);
  const auto cyc = cycles();
  for (std::size_t c = 0; c < cyc.size(); ++c)
    for (int p : cyc[c]) comp[static_cast<std::size_t>(p)] = static_cast<int>(c);
  return comp;
}

int ColoredBraid::writhe() const {
  int w = 0;
  for (int g : word) w += g > 0 ? 1 : -1;
  return w;
}

std::vector<int> ColoredBraid::self_writhes() const {
  std::vector<int> at = component_of_position();  // component of the strand now at each position
  std::vector<int> w(cycles().size(), 0);
  for (int g : word) {
    const auto i = static_cast<std::size_t>(std::abs(g) - 1);
    if (at[i] == at[i + 1]) w[static_cast<std::size_t>(at[i])] += g > 0 ? 1 : -1;
    std::swap(at[i], at[i + 1]);
  }
  return w;
}

ColoredBraid ColoredBraid::with_component_colors(const std::vector<int>& comp_colors) const {
  const auto comp = component_of_position();
  if (comp_colors.size() != cycles().size()) throw Error("expected one color per link component");
  ColoredBraid r = *this;
  r.colors.resize(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p)
    r.colors[static_cast<std::size_t>(p)] = comp_colors[static_cast<std::size_t>(comp[static_cast<std::size_t>(p)])];
  return r;
}

void validate_braid(const ColoredBraid& b) {
  if (b.strands < 1) throw ParseError("braid needs at least one strand", 0);
  for (std::size_t k = 0; k < b.word.size(); ++k) {
    const int g = b.word[k];
    if (g == 0 || std::abs(g) >= b.strands)
      throw ParseError("generator " + std::to_string(g) + " out of range for " + std::to_string(b.strands) +
                           " strands (word index " + std::to_string(k) + ")",
                       k);
  }
  if (static_cast<int>(b.colors.size()) != b.strands)
    throw ParseError("expected " + std::to_string(b.strands) + " colors, got " + std::to_string(b.colors.size()), 0);
  for (std::size_t p = 0; p < b.colors.size(); ++p)
    if (b.colors[p] < 0) throw ParseError("negative color at strand " + std::to_string(p + 1), p);
  const std::vector<int> top = top_of(b);
  for (int p = 0; p < b.strands; ++p) {
    const int t = top[static_cast<std::size_t>(p)];
    if (b.colors[static_cast<std::size_t>(p)] != b.colors[static_cast<std::size_t>(t)])
      throw ParseError("strands " + std::to_string(p + 1) + " and " + std::to_string(t + 1) +
                           " lie on one component but have colors " + std::to_string(b.colors[static_cast<std::size_t>(p)]) +
                           " and " + std::to_string(b.colors[static_cast<std::size_t>(t)]),
                       static_cast<std::size_t>(p));
  }
}

namespace {

// Hand-written scanner for the two text formats; positions are character offsets.
class Scanner {
 public:
  explicit Scanner(const std::string& s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  std::size_t pos() const { return i_; }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("malformed braid: " + what, i_); }

  int integer() {
    skip_ws();
    const std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) {
      i_ = start;
      fail("expected an integer");
    }
    try {
      return std::stoi(s_.substr(start, i_ - start));
    } catch (const std::out_of_range&) {
      i_ = start;
      fail("integer out of range");
    }
  }

  // "[1, -2, 3]" with element offsets
  std::vector<int> list(std::vector<std::size_t>* offsets) {
    expect('[');
    std::vector<int> out;
    if (accept(']')) return out;
    do {
      skip_ws();
      if (offsets) offsets->push_back(i_);
      out.push_back(integer());
    } while (accept(','));
    expect(']');
    return out;
  }

  std::string key() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string k = s_.substr(start, i_ - start);
    if (k.empty() || !accept('=')) {
      i_ = start;
      return {};
    }
    return k;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

ColoredBraid parse_json_braid(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed braid JSON: ") + e.what(), e.byte);
  }
  ColoredBraid b;
  try {
    b.strands = j.at("strands").get<int>();
    b.word = j.at("word").get<std::vector<int>>();
    if (j.contains("colors"))
      b.colors = j.at("colors").get<std::vector<int>>();
    else
      b.colors.assign(static_cast<std::size_t>(std::max(b.strands, 0)), 1);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed braid JSON: ") + e.what(), 0);
  }
  validate_braid(b);
  return b;
}

}  // namespace

ColoredBraid parse_braid(const std::string& text) {
  Scanner sc(text);
  if (sc.peek() == '{') return parse_json_braid(text);

  ColoredBraid b;
  bool have_strands = false, have_colors = false;
  std::vector<std::size_t> word_offsets, color_offsets;
  std::size_t colors_at = 0;
  for (int field = 0; !sc.done(); ++field) {
    if (field > 0) sc.expect(';');
    if (sc.done()) break;
    const std::size_t at = sc.pos();
    std::string k = sc.key();
    if (k.empty()) k = field == 0 ? "s" : field == 1 ? "w" : field == 2 ? "colors" : "";
    if (k == "s" || k == "strands") {
      b.strands = sc.integer();
      have_strands = true;
    } else if (k == "w" || k == "word") {
      b.word = sc.list(&word_offsets);
    } else if (k == "colors" || k == "c") {
      colors_at = sc.pos();
      b.colors = sc.list(&color_offsets);
      have_colors = true;
    } else {
      throw ParseError("malformed braid: unknown field '" + k + "'", at);
    }
  }
  if (!have_strands) throw ParseError("malformed braid: missing strand count", sc.pos());
  if (!have_colors) b.colors.assign(static_cast<std::size_t>(std::max(b.strands, 0)), 1);
  try {
    validate_braid(b);
  } catch (const ParseError& e) {
    // Translate word/color indices into character offsets where possible.
    const std::string what = e.what();
    std::size_t pos = colors_at;
    if (what.find("generator") != std::string::npos && e.position() < word_offsets.size())
      pos = word_offsets[e.position()];
    else if (what.find("strand") != std::string::npos && e.position() < color_offsets.size())
      pos = color_offsets[e.position()];
    throw ParseError(what.substr(0, what.rfind(" (at position")), pos);
  }
  return b;
}

std::string braid_to_string(const ColoredBraid& b) {
  std::ostringstream os;
  os << b.strands << ";[";
  for (std::size_t i = 0; i < b.word.size(); ++i) os << (i ? "," : "") << b.word[i];
  os << "];[";
  for (std::size_t i = 0; i < b.colors.size(); ++i) os << (i ? "," : "") << b.colors[i];
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Crossing replacement

namespace {

// Terms for one crossing with bottom colors (x, y) on strands lo, lo+1.
//   x <= y: sum_{k=0}^{x} (-1)^{k+(y+1)x} q^{x-k} * E^{(y-x+k)} F^{(k)}   (F at the bottom)
//   x >= y: sum_{k=0}^{y} (-1)^{k+(x+1)y} q^{y-k} * F^{(x-y+k)} E^{(k)}
// A negative crossing uses the same webs with q -> 1/q in the coefficients.
std::vector<LadderTerm> crossing_terms(int lo, int x, int y, bool positive) {
  std::vector<LadderTerm> out;
  const int lo_c = std::min(x, y);
  const int hi_c = std::max(x, y);
  for (int k = 0; k <= lo_c; ++k) {
    LadderTerm t;
    t.sign = ((k + (hi_c + 1) * lo_c) % 2 == 0) ? 1 : -1;
    t.q_power = positive ? lo_c - k : k - lo_c;
    if (x <= y) {
      t.steps.push_back({lo, LadderStep::kF, k});
      t.steps.push_back({lo, LadderStep::kE, y - x + k});
    } else {
      t.steps.push_back({lo, LadderStep::kE, k});
      t.steps.push_back({lo, LadderStep::kF, x - y + k});
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<LadderTerm> expand_crossings(const ColoredBraid& b) {
  validate_braid(b);
  std::vector<LadderTerm> acc{LadderTerm{}};
  std::vector<int> cur = b.colors;
  for (int g : b.word) {
    const int lo = std::abs(g) - 1;
    const int x = cur[static_cast<std::size_t>(lo)], y = cur[static_cast<std::size_t>(lo + 1)];
    const auto local = crossing_terms(lo, x, y, g > 0);
    std::vector<LadderTerm> next;
    next.reserve(acc.size() * local.size());
    for (const auto& a : acc)
      for (const auto& t : local) {
        LadderTerm c = a;
        c.sign *= t.sign;
        c.q_power += t.q_power;
        c.steps.insert(c.steps.end(), t.steps.begin(), t.steps.end());
        next.push_back(std::move(c));
      }
    acc = std::move(next);
    std::swap(cur[static_cast<std::size_t>(lo)], cur[static_cast<std::size_t>(lo + 1)]);
  }
  return acc;
}

std::vector<std::pair<LaurentPoly, Web>> resolve_to_webs(const ColoredBraid& b) {
  std::map<std::string, std::pair<LaurentPoly, Web>> merged;
  for (const auto& t : expand_crossings(b)) {
    Web w = annular_ladder(b.colors, t.steps);
    auto& slot = merged[w.canonical_code()];
    if (slot.second.empty() && slot.first.is_zero()) slot.second = w;
    slot.first += LaurentPoly::monomial(t.sign, {0, t.q_power, 0}, kVarsQ);
  }
  std::vector<std::pair<LaurentPoly, Web>> out;
  for (auto& [code, term] : merged)
    if (!term.first.is_zero()) out.push_back(std::move(term));
  return out;
}

WebCombination resolve_crossings(const ColoredBraid& b) {
  WebCombination wc;
  for (const auto& [coef, web] : resolve_to_webs(b)) wc.add(RationalFn(coef), web);
  return wc;
}

RationalFn colored_homfly_columns(const ColoredBraid& b, Evaluator& ev) {
  return ev.symbolic_sum(resolve_to_webs(b));
}

LaurentPoly colored_homfly_columns_at_N(const ColoredBraid& b, int N, Evaluator& ev) {
  return ev.at_N_sum(resolve_to_webs(b), N);
}

RationalFn colored_homfly(const ColoredBraid& b, const ColorSpec& spec, Evaluator& ev) {
  const int comps = b.num_components();
  if (static_cast<int>(spec.size()) != comps)
    throw Error("color spec has " + std::to_string(spec.size()) + " entries but the link has " +
                std::to_string(comps) + " components");
  std::vector<int> ns;
  int rows = 0, total = 0;
  for (const auto& c : spec) {
    if (c.n < 0) throw Error("negative color in color spec");
    ns.push_back(c.n);
    total += c.n;
    if (c.kind == ComponentColor::kRow) ++rows;
  }
  if (rows != 0 && rows != comps)
    throw Error("mixed row and column colors are not supported; use all rows or all columns");
  const RationalFn col = colored_homfly_columns(b.with_component_colors(ns), ev);
  if (rows == 0) return col;
  RationalFn r = col.q_inverted();
  return total % 2 == 0 ? r : -r;
}

RationalFn framing_factor(int n, bool positive, Evaluator& ev) {
  if (n < 1) throw Error("framing factor needs a color n >= 1");
  ColoredBraid curl{2, {positive ? 1 : -1}, {n, n}};
  ColoredBraid unknot{1, {}, {n}};
  return colored_homfly_columns(curl, ev) / colored_homfly_columns(unknot, ev);
}

}  // namespace qholo
