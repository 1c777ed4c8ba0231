#include "qholo/reduce.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cyclo.hpp"
#include "qholo/qnumbers.hpp"

namespace qholo {

using detail::CycloFrac;

// ---------------------------------------------------------------------------
// Coefficients

Coefficient& Coefficient::operator*=(const Coefficient& o) {
  sign *= o.sign;
  q_power += o.q_power;
  q_binomials.insert(q_binomials.end(), o.q_binomials.begin(), o.q_binomials.end());
  n_binomials.insert(n_binomials.end(), o.n_binomials.begin(), o.n_binomials.end());
  return *this;
}

namespace {

CycloFrac cyclo_coefficient(const Coefficient& c) {
  LaurentPoly p = LaurentPoly::monomial(c.sign, {0, c.q_power, 0});
  for (const auto& [n, k] : c.q_binomials) p *= q_binomial(n, k);
  CycloFrac r(std::move(p));
  for (const auto& [s, k] : c.n_binomials) {
    if (k < 0) return CycloFrac::zero();
    for (int i = 1; i <= k; ++i) {
      const int j = s - i + 1;
      r *= LaurentPoly::monomial(1, {1, j, 0}) - LaurentPoly::monomial(1, {-1, -j, 0});
      r *= CycloFrac::inverse_q_diff(i);
    }
  }
  return r;
}

}  // namespace

RationalFn Coefficient::symbolic() const { return cyclo_coefficient(*this).to_rational(); }

LaurentPoly Coefficient::at_N(int N) const {
  LaurentPoly p = LaurentPoly::monomial(sign, {0, q_power, 0});
  for (const auto& [n, k] : q_binomials) p *= q_binomial(n, k);
  for (const auto& [s, k] : n_binomials) p *= q_binomial(N + s, k);
  return p.declare(kVarsQ);
}

std::string Coefficient::to_string() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "") << "q^" << q_power;
  for (const auto& [n, k] : q_binomials) os << " [" << n << " " << k << "]";
  for (const auto& [s, k] : n_binomials) os << " [N" << (s >= 0 ? "+" : "") << s << " " << k << "]";
  return os.str();
}

void WebCombination::add(const RationalFn& coef, const Web& web) {
  if (coef.is_zero()) return;
  const std::string code = web.canonical_code();
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i] != code) continue;
    terms_[i].coef += coef;
    if (terms_[i].coef.is_zero()) {
      terms_.erase(terms_.begin() + static_cast<long>(i));
      codes_.erase(codes_.begin() + static_cast<long>(i));
    }
    return;
  }
  terms_.push_back({coef, web});
  codes_.push_back(code);
}

const char* to_string(Rule r) {
  switch (r) {
    case Rule::kLoop: return "loop";
    case Rule::kDigonI: return "digon-I";
    case Rule::kDigonII: return "digon-II";
    case Rule::kRebracket: return "rebracket";
    case Rule::kSquareSwitch: return "square-switch";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Pattern matching

namespace {

enum Klass : int {
  kClassLoop = 0,
  kClassDigon = 1,
  kClassTriangle = 2,
  kClassSquareRebracket = 3,
  kClassSwitch = 4,
  kClassLarge = 5,  // + face degree
};

struct Candidate {
  int klass;
  Rule rule;
  int a;  // dart / edge / vertex depending on rule
};

// Edge whose endpoints are both merges or both splits, with no parallel edge.
bool rebracketable(const Web& w, int e) {
  const int u = w.tail_vertex(e), v = w.head_vertex(e);
  if (u == v || w.is_merge(u) != w.is_merge(v)) return false;
  for (int d : w.rotation(u)) {
    if (Web::edge_of(d) == e) continue;
    if (w.vertex_of(Web::twin(d)) == v) return false;
  }
  return true;
}

// Checks the left-square pattern rooted at split vertex u, returning the in-dart at u.
// Pattern (ccw rotations): u = (in, r1, x), v1 = (r1, alpha, m), v2 = (m, beta, y), w = (x, y, out).
struct Square {
  int eu, r1, x, m, y, alpha_h, beta_t, ew_t;
  int u, v1, v2, w;
};

std::optional<Square> match_square(const Web& w, int u) {
  if (w.is_merge(u)) return std::nullopt;
  Square s{};
  s.u = u;
  const auto& ru = w.rotation(u);
  int k = 0;
  while (!(ru[static_cast<std::size_t>(k)] & 1)) ++k;
  s.eu = ru[static_cast<std::size_t>(k)];
  const int tr1 = w.ccw(s.eu), tx = w.ccw(tr1);
  s.r1 = Web::edge_of(tr1);
  s.x = Web::edge_of(tx);
  s.v1 = w.head_vertex(s.r1);
  if (!w.is_merge(s.v1)) return std::nullopt;
  const int r1h = 2 * s.r1 + 1;
  s.alpha_h = w.ccw(r1h);
  const int mt = w.ccw(s.alpha_h);
  if (!(s.alpha_h & 1) || (mt & 1)) return std::nullopt;
  s.m = Web::edge_of(mt);
  s.v2 = w.head_vertex(s.m);
  if (w.is_merge(s.v2)) return std::nullopt;
  const int mh = 2 * s.m + 1;
  s.beta_t = w.ccw(mh);
  const int yt = w.ccw(s.beta_t);
  s.y = Web::edge_of(yt);
  s.w = w.head_vertex(s.y);
  if (s.w != w.head_vertex(s.x)) return std::nullopt;
  const int xh = 2 * s.x + 1, yh = 2 * s.y + 1;
  if (w.ccw(xh) != yh) return std::nullopt;
  s.ew_t = w.ccw(yh);
  if (s.ew_t & 1) return std::nullopt;
  std::unordered_set<int> vs{s.u, s.v1, s.v2, s.w};
  if (vs.size() != 4) return std::nullopt;
  return s;
}

std::vector<Candidate> collect(const Web& w, int* best_class) {
  std::vector<Candidate> out;
  *best_class = 1 << 30;
  auto push = [&](int klass, Rule rule, int a) {
    if (klass > *best_class) return;
    if (klass < *best_class) {
      out.clear();
      *best_class = klass;
    }
    out.push_back({klass, rule, a});
  };
  if (!w.loops().empty()) {
    for (const auto& [c, k] : w.loops()) push(kClassLoop, Rule::kLoop, c);
    return out;
  }
  const Web::Faces faces = w.faces();
  for (const auto& cyc : faces.cycles) {
    const int deg = static_cast<int>(cyc.size());
    if (deg == 2) {
      const int e0 = Web::edge_of(cyc[0]), e1 = Web::edge_of(cyc[1]);
      if (e0 == e1) continue;
      const bool parallel = w.tail_vertex(e0) == w.tail_vertex(e1);
      push(kClassDigon, parallel ? Rule::kDigonI : Rule::kDigonII, cyc[0]);
      continue;
    }
    const int klass = deg == 3 ? kClassTriangle : deg == 4 ? kClassSquareRebracket : kClassLarge + deg;
    if (klass > *best_class) continue;
    bool found = false;
    for (int d : cyc) {
      const int e = Web::edge_of(d);
      if (rebracketable(w, e)) {
        push(klass, Rule::kRebracket, e);
        found = true;
      }
    }
    if (!found && deg == 4 && kClassSwitch <= *best_class) {
      for (int d : cyc) {
        const int u = w.vertex_of(d);
        if (auto s = match_square(w, u)) {
          // Only accept when the square really is this face.
          if (faces.face_of[static_cast<std::size_t>(2 * s->r1)] == faces.face_of[static_cast<std::size_t>(cyc[0])] ||
              faces.face_of[static_cast<std::size_t>(2 * s->x)] == faces.face_of[static_cast<std::size_t>(cyc[0])]) {
            push(kClassSwitch, Rule::kSquareSwitch, u);
            break;
          }
        }
      }
    }
  }
  // Deduplicate (an edge can be listed from both adjacent faces).
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.klass, x.a, x.rule) < std::tie(y.klass, y.a, y.rule);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Candidate& x, const Candidate& y) { return x.klass == y.klass && x.a == y.a && x.rule == y.rule; }),
            out.end());
  return out;
}

LocalMove apply_loop(const Web& w, int color) {
  Coefficient c;
  for (int i = 0; i < w.loops().at(color); ++i) c.n_binomials.push_back({0, color});
  RawWeb raw = w.to_raw();
  raw.loops.erase(color);
  return {Rule::kLoop, {{c, validate_web(raw)}}};
}

LocalMove apply_digon(const Web& w, Rule rule, int d0) {
  const int e0 = Web::edge_of(d0);
  const int d1 = w.face_next(d0);
  const int e1 = Web::edge_of(d1);
  WebBuilder b(w);
  Coefficient c;
  int ext_in = -1, ext_out = -1;
  if (rule == Rule::kDigonI) {
    const int u = w.tail_vertex(e0), v = w.head_vertex(e0);
    for (int d : w.rotation(u))
      if (d & 1) ext_in = d;
    for (int d : w.rotation(v))
      if (!(d & 1)) ext_out = d;
    c.q_binomials.push_back({w.color(e0) + w.color(e1), w.color(e0)});
    b.remove_vertex(u);
    b.remove_vertex(v);
  } else {
    // Directed two-cycle: the merge vertex receives the through strand.
    const int x = w.tail_vertex(e0), y = w.head_vertex(e0);
    const int mrg = w.is_merge(x) ? x : y;
    const int spl = mrg == x ? y : x;
    const int loop_edge = w.tail_vertex(e0) == spl ? e0 : e1;  // spl -> mrg carries the side loop
    for (int d : w.rotation(mrg))
      if ((d & 1) && Web::edge_of(d) != loop_edge) ext_in = d;
    for (int d : w.rotation(spl))
      if (!(d & 1) && Web::edge_of(d) != loop_edge) ext_out = d;
    const int k = w.color(Web::edge_of(ext_in));
    c.n_binomials.push_back({-k, w.color(loop_edge)});
    b.remove_vertex(mrg);
    b.remove_vertex(spl);
  }
  b.remove_edge(e0);
  b.remove_edge(e1);
  b.add_vertex({ext_in, ext_out});
  return {rule, {{c, b.finish(false)}}};
}

LocalMove apply_rebracket(const Web& w, int e) {
  const int u = w.tail_vertex(e), v = w.head_vertex(e);
  const bool merges = w.is_merge(u);
  const int te = 2 * e, he = 2 * e + 1;
  const int a1 = w.ccw(te), a2 = w.ccw(a1);
  const int b1 = w.ccw(he), b2 = w.ccw(b1);
  // New split: P = {b2, a1}, Q = {a2, b1}.
  auto odd_one = [&](int d) { return merges ? !(d & 1) : (d & 1); };
  const bool x_is_p = odd_one(b2) || odd_one(a1);
  WebBuilder b(w);
  b.remove_vertex(u);
  b.remove_vertex(v);
  b.remove_edge(e);
  const int sum_p = w.color(Web::edge_of(b2)) + w.color(Web::edge_of(a1));
  const int sum_q = w.color(Web::edge_of(a2)) + w.color(Web::edge_of(b1));
  const int f = b.add_edge(x_is_p ? sum_q : sum_p);
  // Merge case: f flows from the all-input group Y to X. Split case: from X to Y.
  const bool p_is_tail = merges ? !x_is_p : x_is_p;
  const int fp = p_is_tail ? 2 * f : 2 * f + 1;
  const int fq = p_is_tail ? 2 * f + 1 : 2 * f;
  b.add_vertex({fp, b2, a1});
  b.add_vertex({fq, a2, b1});
  return {Rule::kRebracket, {{Coefficient{}, b.finish(false)}}};
}

LocalMove apply_switch(const Web& w, int u) {
  const Square s = *match_square(w, u);
  const int x = w.color(s.x), r1 = w.color(s.r1), y = w.color(s.y);
  const int alpha = w.color(Web::edge_of(s.alpha_h));
  LocalMove mv{Rule::kSquareSwitch, {}};
  for (int t = 0; t <= std::min(r1, y); ++t) {
    const int xp = alpha - y + t;
    if (xp < 0) continue;
    WebBuilder b(w);
    for (int v : {s.u, s.v1, s.v2, s.w}) b.remove_vertex(v);
    for (int e : {s.r1, s.x, s.m, s.y}) b.remove_edge(e);
    const int ex = b.add_edge(xp);
    const int er = b.add_edge(y - t);
    const int em = b.add_edge(x + r1 + y - t);
    const int ey = b.add_edge(r1 - t);
    b.add_vertex({s.alpha_h, 2 * ex, 2 * er});
    b.add_vertex({s.eu, 2 * er + 1, 2 * em});
    b.add_vertex({2 * em + 1, 2 * ey, s.ew_t});
    b.add_vertex({2 * ey + 1, 2 * ex + 1, s.beta_t});
    Coefficient c;
    c.q_binomials.push_back({y + x - alpha, t});
    mv.terms.push_back({c, b.finish(false)});
  }
  return mv;
}

}  // namespace

std::optional<LocalMove> find_move(const Web& w, const ReductionPolicy& policy) {
  int klass = 0;
  std::vector<Candidate> cands = collect(w, &klass);
  if (cands.empty()) return std::nullopt;
  std::size_t pick = 0;
  if (policy.seed != 0) {
    // Deterministic in (seed, web): the same web always gets the same choice.
    std::seed_seq seq{policy.seed, static_cast<std::uint64_t>(std::hash<std::string>{}(w.canonical_code()))};
    std::mt19937_64 rng(seq);
    pick = std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng);
  }
  const Candidate& c = cands[pick];
  switch (c.rule) {
    case Rule::kLoop: return apply_loop(w, c.a);
    case Rule::kDigonI:
    case Rule::kDigonII: return apply_digon(w, c.rule, c.a);
    case Rule::kRebracket: return apply_rebracket(w, c.a);
    case Rule::kSquareSwitch: return apply_switch(w, c.a);
  }
  return std::nullopt;
}

WebCombination reduce_step(const Web& w, const ReductionPolicy& policy) {
  auto mv = find_move(w, policy);
  if (!mv) throw StuckError(w.canonical_code());
  WebCombination out;
  for (const auto& [c, web] : mv->terms) out.add(c.symbolic(), web);
  return out;
}

long default_step_limit() {
  if (const char* env = std::getenv("QHOLO_STEP_LIMIT")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1000000;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct SymbolicRing {
  using Value = CycloFrac;
  static Value one() { return CycloFrac::one(); }
  Value coef(const Coefficient& c) const { return cyclo_coefficient(c); }
  static void normalize(Value& v) { v.reduce(); }
  static std::string key(const std::string& code) { return code; }
};

struct AtNRing {
  using Value = LaurentPoly;
  int N;
  static Value one() { return LaurentPoly(1L).declare(kVarsQ); }
  Value coef(const Coefficient& c) const { return c.at_N(N); }
  static void normalize(Value&) {}
  std::string key(const std::string& code) const { return std::to_string(N) + "#" + code; }
};

}  // namespace

struct Evaluator::Impl {
  Options opts;
  mutable std::mutex mu;
  std::unordered_map<std::string, CycloFrac> symbolic_memo;
  std::unordered_map<std::string, LaurentPoly> at_n_memo;  // key: N '#' code
  Stats stats;

  struct Call {
    long steps = 0;
    long limit = 0;
    std::vector<std::string> stack;
    std::unordered_set<std::string> on_stack;
  };

  auto& memo(const SymbolicRing&) { return symbolic_memo; }
  auto& memo(const AtNRing&) { return at_n_memo; }

  template <class Ring>
  typename Ring::Value eval(const Web& w, Call& call, const Ring& ring);
};

template <class Ring>
typename Ring::Value Evaluator::Impl::eval(const Web& w, Call& call, const Ring& ring) {
  using Value = typename Ring::Value;
  if (w.empty()) return Ring::one();
  std::vector<Web> comps;
  if (w.count_map_components() + w.total_loops() > 1) {
    comps = w.components();
    Value prod = Ring::one();
    for (const Web& c : comps) {
      prod *= eval(c, call, ring);
      if (prod.is_zero()) break;
    }
    return prod;
  }
  const std::string key = ring.key(w.canonical_code());
  auto& memo = this->memo(ring);
  {
    std::lock_guard lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) {
      ++stats.memo_hits;
      return it->second;
    }
  }
  if (!call.on_stack.insert(key).second) {
    call.stack.push_back(key);
    throw StepLimitError("rewriting revisited a web on the evaluation stack", call.stack);
  }
  call.stack.push_back(key);
  if (++call.steps > call.limit) throw StepLimitError("step limit exceeded", call.stack);

  auto mv = find_move(w, opts.policy);
  if (!mv) throw StuckError(w.canonical_code());
  Value sum{};
  for (const auto& [c, child] : mv->terms) {
    Value cv = ring.coef(c);
    if (cv.is_zero()) continue;
    cv *= eval(child, call, ring);
    sum += cv;
  }
  Ring::normalize(sum);

  call.stack.pop_back();
  call.on_stack.erase(key);
  std::lock_guard lock(mu);
  stats.steps += 1;
  memo.emplace(key, sum);
  return sum;
}

Evaluator::Evaluator() : Evaluator(Options{}) {}
Evaluator::Evaluator(Options opts) : impl_(std::make_unique<Impl>()) {
  impl_->opts = opts;
  if (impl_->opts.step_limit <= 0) impl_->opts.step_limit = default_step_limit();
}
Evaluator::~Evaluator() = default;

RationalFn Evaluator::symbolic(const Web& w) {
  Impl::Call call;
  call.limit = impl_->opts.step_limit;
  SymbolicRing ring;
  CycloFrac v = impl_->eval(w, call, ring);
  return v.to_rational();
}

LaurentPoly Evaluator::at_N(const Web& w, int N) {
  if (N < 1) throw Error("at_N requires N >= 1");
  Impl::Call call;
  call.limit = impl_->opts.step_limit;
  AtNRing ring{N};
  return impl_->eval(w, call, ring).declare(kVarsQ);
}

RationalFn Evaluator::symbolic_sum(const std::vector<std::pair<LaurentPoly, Web>>& terms) {
  CycloFrac total;
  SymbolicRing ring;
  for (const auto& [coef, web] : terms) {
    if (coef.is_zero()) continue;
    Impl::Call call;
    call.limit = impl_->opts.step_limit;
    CycloFrac v = impl_->eval(web, call, ring);
    v *= coef;
    total += v;
  }
  return total.to_rational();
}

LaurentPoly Evaluator::at_N_sum(const std::vector<std::pair<LaurentPoly, Web>>& terms, int N) {
  if (N < 1) throw Error("at_N requires N >= 1");
  const std::vector<Binding> bind{Binding::a_to_q_power(N)};
  LaurentPoly total;
  AtNRing ring{N};
  for (const auto& [coef, web] : terms) {
    if (coef.is_zero()) continue;
    Impl::Call call;
    call.limit = impl_->opts.step_limit;
    total += specialize(coef, bind) * impl_->eval(web, call, ring);
  }
  return total.declare(kVarsQ);
}

Evaluator::Stats Evaluator::stats() const {
  std::lock_guard lock(impl_->mu);
  Stats s = impl_->stats;
  s.memo_size = impl_->symbolic_memo.size() + impl_->at_n_memo.size();
  return s;
}

Evaluator& default_evaluator() {
  static Evaluator ev;
  return ev;
}

RationalFn evaluate(const Web& w) { return default_evaluator().symbolic(w); }
LaurentPoly evaluate_at_N(const Web& w, int N) { return default_evaluator().at_N(w, N); }

}  // namespace qholo
