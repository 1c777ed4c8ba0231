#include "suites.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "qholo/holonomy.hpp"
#include "qholo/qnumbers.hpp"
#include "support/hecke_oracle.hpp"
#include "support/ladder_corpus.hpp"
#include "support/random_poly.hpp"

namespace qholo::checks {
namespace {

using Clock = std::chrono::steady_clock;

LaurentPoly q(int k = 1) { return LaurentPoly::variable(Var::q, k); }
LaurentPoly a(int k = 1) { return LaurentPoly::variable(Var::a, k); }

// Collects the first failure and the case count; finish() applies the time bound.
class Tally {
 public:
  Tally(int id, std::string name, double limit) : start_(Clock::now()) {
    r_.id = id;
    r_.name = std::move(name);
    r_.limit_seconds = limit;
  }
  // Records one case; returns ok so callers can stop early if they like.
  bool check(bool ok, const std::function<std::string()>& what) {
    ++r_.cases;
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.detail = what();
    }
    return ok;
  }
  void fail(const std::string& what) { check(false, [&] { return what; }); }
  bool ok() const { return r_.pass; }
  SuiteResult finish(const std::string& summary = {}) {
    r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    if (r_.pass && r_.limit_seconds > 0 && r_.seconds > r_.limit_seconds) {
      r_.pass = false;
      std::ostringstream os;
      os << "exact, but took " << r_.seconds << " s against a bound of " << r_.limit_seconds << " s";
      r_.detail = os.str();
    }
    if (r_.pass) r_.detail = summary.empty() ? std::to_string(r_.cases) + " identities hold" : summary;
    return r_;
  }

 private:
  SuiteResult r_;
  Clock::time_point start_;
};

template <class F>
SuiteResult guarded(Tally& t, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    t.fail(std::string("error: ") + e.what());
    return t.finish();
  }
}

std::vector<int> random_word(std::mt19937_64& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::vector<int> w;
  for (int i = 0; i < length; ++i) w.push_back(rng() % 2 ? gen(rng) : -gen(rng));
  return w;
}

ColoredBraid uncolored(int strands, std::vector<int> word) {
  return ColoredBraid{strands, std::move(word), std::vector<int>(static_cast<std::size_t>(strands), 1)};
}

std::vector<Web> web_corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Web> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_ladder_web(rng, 2 + i % 2, 12, 3));
  return out;
}

bool nonnegative(const LaurentPoly& p) {
  for (const auto& t : p.terms())
    if (sgn(t.coef) < 0) return false;
  return true;
}

OreOperator random_op(std::mt19937_64& rng, int max_order) {
  while (true) {
    const int d = static_cast<int>(rng() % static_cast<unsigned>(max_order + 1));
    std::vector<LaurentPoly> c;
    for (int j = 0; j <= d; ++j) c.push_back(testing::random_nonneg_poly(rng, kVarsAQM, 3, 2));
    OreOperator p(Algebra::kWt, std::move(c));
    if (!p.is_zero()) return p;
  }
}

SequenceView random_sequence(std::mt19937_64& rng, int length) {
  SequenceView f;
  for (int i = 0; i < length; ++i) {
    LaurentPoly den;
    while (den.is_zero()) den = testing::random_poly(rng, kVarsAQ, 2, 2);
    f.emplace_back(testing::random_poly(rng, kVarsAQ, 3, 2), den);
  }
  return f;
}

// Rank of an integer matrix by fraction-free elimination.
int rank_of(std::vector<std::vector<Integer>> m) {
  int rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    const auto& p = m[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
      const Integer f = m[r][c], g = p[c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] * g - p[k] * f;
    }
    ++rank;
  }
  return rank;
}

// Cyclotomic expansion of the colored Jones polynomial (dimension d, divided by the
// unknot, zero framing): sum_k c_k prod_{j=1..k} {d+j}{d-j} with {x} = q^x - q^-x.
LaurentPoly cyclotomic_sum(int d, const std::function<LaurentPoly(int)>& c) {
  LaurentPoly sum(0L), prod(1L);
  for (int k = 0; k < d; ++k) {
    if (k > 0) prod *= (q(d + k) - q(-d - k)) * (q(d - k) - q(k - d));
    sum += c(k) * prod;
  }
  return sum;
}

struct Knot {
  const char* name;
  ColoredBraid braid;
  std::function<LaurentPoly(int)> habiro;  // c_k
};

const std::vector<Knot>& knots() {
  static const std::vector<Knot> k = {
      {"trefoil", ColoredBraid{2, {1, 1, 1}, {1, 1}},
       [](int j) { return LaurentPoly(j % 2 ? -1L : 1L) * q(-j * (j + 3)); }},
      {"figure-eight", ColoredBraid{3, {1, -2, 1, -2}, {1, 1, 1}}, [](int) { return LaurentPoly(1L); }},
  };
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteResult axioms(const Options&) {
  Tally t(1, "axiom exactness", 1.0);
  return guarded(t, [&] {
    const RationalFn unknot(a() - a(-1), q() - q(-1));
    t.check(colored_homfly_columns(ColoredBraid{1, {}, {1}}) == unknot, [] { return "unknot value"; });
    t.check(colored_homfly_columns(ColoredBraid{2, {1}, {1, 1}}) == RationalFn(a()) * unknot,
            [] { return "positive curl is not multiplication by a"; });
    t.check(colored_homfly_columns(ColoredBraid{2, {-1}, {1, 1}}) == RationalFn(a(-1)) * unknot,
            [] { return "negative curl is not multiplication by 1/a"; });
    return t.finish("unknot = (a-1/a)/(q-1/q); positive curl = a");
  });
}

SuiteResult skein(const Options& o) {
  Tally t(2, "skein suite", 60.0);
  return guarded(t, [&] {
    std::mt19937_64 rng(o.seed);
    const int links = std::max(o.trials, 24);
    std::map<std::pair<int, std::vector<int>>, RationalFn> memo;
    long oracle_checks = 0;
    auto value = [&](int strands, const std::vector<int>& w) -> const RationalFn& {
      auto key = std::pair{strands, w};
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      const RationalFn v = colored_homfly_columns(uncolored(strands, w));
      ++oracle_checks;
      t.check(v == testing::hecke_homfly(strands, w),
              [&] { return "engine differs from the skein oracle on " + braid_to_string(uncolored(strands, w)); });
      return memo.emplace(std::move(key), v).first->second;
    };
    const RationalFn z(q() - q(-1));
    for (int i = 0; i < links && t.ok(); ++i) {
      const int strands = 2 + i % 3;
      const int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::max(1, o.max_crossings)));
      const auto w = random_word(rng, strands, len);
      for (std::size_t s = 0; s < w.size() && t.ok(); ++s) {
        std::vector<int> plus = w, minus = w, zero = w;
        plus[s] = std::abs(w[s]);
        minus[s] = -std::abs(w[s]);
        zero.erase(zero.begin() + static_cast<long>(s));
        t.check(value(strands, plus) - value(strands, minus) == z * value(strands, zero), [&] {
          return "skein relation fails at crossing " + std::to_string(s) + " of " + braid_to_string(uncolored(strands, w));
        });
      }
    }
    return t.finish(std::to_string(links) + " links, every crossing site resolved, " + std::to_string(oracle_checks) +
                    " oracle comparisons");
  });
}

SuiteResult web_coherence(const Options& o) {
  Tally t(3, "web coherence", 120.0);
  return guarded(t, [&] {
    const int count = std::max(o.trials, 60);
    for (const Web& w : web_corpus(count, o.seed + 2)) {
      if (w.num_edges() > 12) continue;
      const RationalFn s = evaluate(w);
      for (int N : {2, 3, 4}) {
        const LaurentPoly x = evaluate_at_N(w, N);
        t.check(nonnegative(x), [&] { return "negative coefficient at N=" + std::to_string(N) + " for " + w.canonical_code(); });
        const Binding at[] = {Binding::a_to_q_power(N)};
        t.check(specialize(s, at) == RationalFn(x),
                [&] { return "symbolic and at_N disagree at N=" + std::to_string(N) + " for " + w.canonical_code(); });
      }
    }
    return t.finish(std::to_string(count) + " webs x N in {2,3,4}: coherent and positive");
  });
}

SuiteResult confluence(const Options& o) {
  Tally t(4, "confluence", 120.0);
  return guarded(t, [&] {
    const int count = std::max(o.trials, 100);
    const auto webs = web_corpus(count, o.seed + 3);
    for (std::size_t i = 0; i < webs.size(); ++i) {
      Evaluator x(Evaluator::Options{ReductionPolicy{0}, 0});
      Evaluator y(Evaluator::Options{ReductionPolicy{o.seed * 7919 + 1000 + i}, 0});
      t.check(x.symbolic(webs[i]) == y.symbolic(webs[i]), [&] { return "policies disagree on " + webs[i].canonical_code(); });
    }
    return t.finish(std::to_string(count) + " webs, two seeded policies agree");
  });
}

SuiteResult coloring_lattice(const Options& o) {
  Tally t(5, "coloring lattice", 0);
  return guarded(t, [&] {
    const int count = std::max(o.trials, 60);
    for (const Web& w : web_corpus(count, o.seed + 5)) {
      const FlowGraph g = underlying_graph(w);
      const auto basis = coloring_basis(g);
      const int r = static_cast<int>(basis.size());
      t.check(r == bounded_face_count(w), [&] { return "rank differs from face count for " + w.canonical_code(); });
      std::vector<std::vector<Integer>> inc(static_cast<std::size_t>(g.num_vertices), std::vector<Integer>(g.edges.size(), 0));
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        inc[static_cast<std::size_t>(g.edges[e].first)][e] -= 1;
        inc[static_cast<std::size_t>(g.edges[e].second)][e] += 1;
      }
      t.check(r == static_cast<int>(g.edges.size()) - rank_of(inc),
              [&] { return "rank differs from |E| - rank(incidence) for " + w.canonical_code(); });
      std::vector<std::vector<Integer>> rows;
      for (const auto& b : basis) {
        rows.emplace_back(b.begin(), b.end());
        std::vector<long> div(static_cast<std::size_t>(g.num_vertices), 0);
        for (std::size_t e = 0; e < b.size(); ++e) {
          div[static_cast<std::size_t>(g.edges[e].first)] -= b[e];
          div[static_cast<std::size_t>(g.edges[e].second)] += b[e];
        }
        t.check(std::all_of(div.begin(), div.end(), [](long d) { return d == 0; }),
                [&] { return "basis vector is not a flow in " + w.canonical_code(); });
      }
      t.check(rank_of(rows) == r, [&] { return "basis is dependent in " + w.canonical_code(); });
    }
    return t.finish(std::to_string(count) + " webs: rank = bounded faces = |E| - rank(incidence)");
  });
}

SuiteResult reidemeister(const Options&) {
  Tally t(6, "Reidemeister web checks", 0);
  return guarded(t, [&] {
    // Two moves, in context, for every assignment of colors 1..2 to the components.
    auto all_colorings = [](const ColoredBraid& shape, const std::function<void(const ColoredBraid&)>& f) {
      const int comps = shape.num_components();
      std::vector<int> c(static_cast<std::size_t>(comps), 1);
      while (true) {
        f(shape.with_component_colors(c));
        int i = 0;
        while (i < comps && c[static_cast<std::size_t>(i)] == 2) c[static_cast<std::size_t>(i++)] = 1;
        if (i == comps) break;
        ++c[static_cast<std::size_t>(i)];
      }
    };
    const std::vector<std::pair<int, std::vector<int>>> contexts = {
        {2, {}}, {2, {1}}, {2, {-1}}, {3, {}}, {3, {1}}, {3, {2}}, {3, {1, 2}}, {3, {-2, 1}}};
    for (const auto& [strands, w] : contexts)
      for (int g = 1; g < strands; ++g)
        for (int sign : {1, -1})
          for (std::size_t pos = 0; pos <= w.size(); ++pos) {
            std::vector<int> w2 = w;
            w2.insert(w2.begin() + static_cast<long>(pos), {sign * g, -sign * g});
            all_colorings(uncolored(strands, w), [&](const ColoredBraid& base) {
              const ColoredBraid ext{strands, w2, base.colors};
              t.check(colored_homfly_columns(ext) == colored_homfly_columns(base),
                      [&] { return "RII fails for " + braid_to_string(ext); });
            });
          }
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> braid_relations = {
        {{1, 2, 1}, {2, 1, 2}}, {{-1, -2, -1}, {-2, -1, -2}}, {{1, 2, -1}, {-2, 1, 2}}, {{-1, 2, 1}, {2, 1, -2}}};
    for (const auto& [x, y] : braid_relations)
      for (const std::vector<int>& tail : {std::vector<int>{}, std::vector<int>{1}, std::vector<int>{-2}}) {
        std::vector<int> wx = x, wy = y;
        wx.insert(wx.end(), tail.begin(), tail.end());
        wy.insert(wy.end(), tail.begin(), tail.end());
        all_colorings(uncolored(3, wx), [&](const ColoredBraid& bx) {
          const ColoredBraid by{3, wy, bx.colors};
          t.check(colored_homfly_columns(bx) == colored_homfly_columns(by),
                  [&] { return "braid relation fails for " + braid_to_string(bx); });
        });
      }
    return t.finish("RII and braid relations hold for all colorings with colors <= 2");
  });
}

SuiteResult unknot_recursion(const Options& o) {
  Tally t(7, "unknot recursion", 60.0);
  return guarded(t, [&] {
    const int n_max = o.n_max >= 0 ? o.n_max : 10;
    const SequenceTable table = build_table(ColoredBraid{1, {}, {1}}, 0, n_max, {.framing = Framing::kZero, .id = "unknot"});
    const SearchResult s = search_recursion(table, {1, 3, 3});
    if (!s.op) {
      t.fail(s.stopped ? s.stopped->what() : "no first-order recursion within M<=3, a,q<=3");
      return t.finish();
    }
    t.check(s.op->order() == 1, [&] { return "operator has order " + std::to_string(s.op->order()); });
    const VerifyReport v = verify_recursion(*s.op, table, s.report.fit_indices.back());
    t.check(v.pass && v.checked >= 8, [&] { return "residual at n=" + std::to_string(v.first_failing); });
    const SpecializationReport sp = specialization_suite(*s.op, table, {2});
    t.check(sp.per_N.at(0).annihilates,
            [&] { return "a->q^2 image fails on the N=2 table at n=" + std::to_string(sp.per_N[0].first_failing); });
    return t.finish("order 1, " + s.op->to_string() + "; residuals vanish for n=0.." + std::to_string(v.checked - 1) +
                    " and the N=2 table");
  });
}

SuiteResult knot_pipeline(const Options& o) {
  Tally t(8, "trefoil and figure-8 pipeline", 1800.0);
  return guarded(t, [&] {
    const int n_max = o.n_max >= 0 ? o.n_max : 4;
    // Every knot is run even after a failure, so the report covers both.
    std::vector<std::string> notes, failures;
    for (const Knot& k : knots()) {
      const SequenceTable table = build_table(k.braid, 0, n_max, {.framing = Framing::kZero, .id = k.name});
      const SearchResult s = search_recursion(table, {2, 6, 8});
      if (!s.op) {
        std::string why = std::string(k.name) + ": no recursion found within order<=2, M<=6, a,q<=8 from n_max=" +
                          std::to_string(n_max);
        if (s.stopped) why += " (" + std::string(s.stopped->what()) + ")";
        failures.push_back(why);
        continue;
      }
      const VerifyReport v = verify_recursion(*s.op, table, s.report.fit_indices.back());
      if (!v.pass || v.held_out.size() < 2) {
        failures.push_back(std::string(k.name) + ": held-out verification failed");
        continue;
      }
      const SpecializationReport sp = specialization_suite(*s.op, table, o.Ns);
      if (!sp.pass) {
        failures.push_back(std::string(k.name) + ": specialization suite failed");
        continue;
      }
      notes.push_back(std::string(k.name) + " " + s.ansatz.to_string());
    }
    std::string summary;
    for (const auto& n : failures.empty() ? notes : failures) summary += (summary.empty() ? "" : "; ") + n;
    if (!failures.empty()) t.fail(summary);
    else t.check(true, [] { return std::string(); });
    return t.finish(summary);
  });
}

SuiteResult duality(const Options& o) {
  Tally t(9, "duality", 0);
  return guarded(t, [&] {
    const int n_max = o.n_max >= 0 ? o.n_max : 3;
    for (const Knot& k : knots()) {
      const int w = k.braid.writhe();
      const RationalFn c1 = colored_homfly_columns(k.braid);
      for (int n = 1; n <= n_max; ++n) {
        const ColoredBraid b = k.braid.with_component_colors({n});
        const RationalFn col = colored_homfly(b, {{ComponentColor::kColumn, n}});
        const RationalFn row = colored_homfly(b, {{ComponentColor::kRow, n}});
        const RationalFn dual = n % 2 ? -col.q_inverted() : col.q_inverted();
        t.check(row == dual, [&] { return std::string(k.name) + ": row and column values are not dual at n=" + std::to_string(n); });
        if (n == 1)  // (1) and (1^1) are the same partition
          t.check(row == c1, [&] { return std::string(k.name) + ": row 1 differs from column 1"; });
        // Independent check of the row values at sl_2: zero framing, divided by the unknot,
        // they must match the cyclotomic expansion of the colored Jones polynomial.
        const Binding at2[] = {Binding::a_to_q_power(2)};
        const RationalFn unknot_row = colored_homfly(ColoredBraid{1, {}, {n}}, {{ComponentColor::kRow, n}});
        const RationalFn framing = RationalFn(a(n) * q(n * (n - 1))).pow(w);
        const RationalFn normalized = specialize(row / framing / unknot_row, at2);
        t.check(normalized == RationalFn(cyclotomic_sum(n + 1, k.habiro)),
                [&] { return std::string(k.name) + ": row value at N=2 does not match the cyclotomic formula at n=" + std::to_string(n); });
      }
    }
    return t.finish("trefoil and figure-8, n<=" + std::to_string(n_max) + ": duality, row(1)=column(1), sl2 cyclotomic check");
  });
}

SuiteResult algebra(const Options& o) {
  Tally t(10, "algebra suites", 60.0);
  return guarded(t, [&] {
    std::mt19937_64 rng(o.seed + 10);
    for (int i = 0; i < 50; ++i) {
      const OreOperator x = random_op(rng, 2), y = random_op(rng, 2), z = random_op(rng, 2);
      t.check(op_multiply(op_multiply(x, y), z) == op_multiply(x, op_multiply(y, z)),
              [&] { return "associativity fails for " + x.to_string(); });
      const SequenceView f = random_sequence(rng, 6);
      t.check(op_apply(op_multiply(x, y), f) == op_apply(x, op_apply(y, f)),
              [&] { return "action is not compatible with multiplication for " + x.to_string(); });
    }
    const SuiteResult d = diagram(o);
    if (!d.pass) t.fail(d.detail);
    for (int i = 0; i < 50; ++i) {
      const OreOperator p = random_op(rng, 2);
      const OreOperator c = content_free(p);
      t.check(content_free(c) == c, [&] { return "content_free is not idempotent on " + p.to_string(); });
      t.check(op_multiply(OreOperator::scalar(Algebra::kWt, operator_content(p)), c) == p,
              [&] { return "content times content-free part differs from " + p.to_string(); });
    }
    return t.finish("50 triples, 100 diagram squares, 50 content_free checks");
  });
}

SuiteResult diagram(const Options& o) {
  Tally t(0, "specialization diagram", 0);
  return guarded(t, [&] {
    std::mt19937_64 rng(o.seed + 11);
    const Binding q1[] = {Binding::set_one(Var::q)};
    const Binding both[] = {Binding::set_one(Var::a), Binding::set_one(Var::q)};
    const int count = std::max(o.trials, 100);
    for (int i = 0; i < count; ++i) {
      const OreOperator p = random_op(rng, 2);
      const int N = 1 + i % 5;
      const Binding atN[] = {Binding::a_to_q_power(N)};
      t.check(op_specialize(op_specialize(p, atN), q1) == op_specialize(p, both),
              [&] { return "square fails at N=" + std::to_string(N) + " for " + p.to_string(); });
    }
    return t.finish(std::to_string(count) + " random operators");
  });
}

std::vector<std::string> suite_names() {
  return {"axioms", "skein", "coherence", "confluence", "lattice", "reidemeister",
          "unknot", "pipeline", "duality", "algebra", "diagram"};
}

SuiteResult run(const std::string& name, const Options& o) {
  static const std::map<std::string, SuiteResult (*)(const Options&)> table = {
      {"axioms", axioms},       {"skein", skein},         {"coherence", web_coherence},
      {"confluence", confluence}, {"lattice", coloring_lattice}, {"reidemeister", reidemeister},
      {"unknot", unknot_recursion}, {"pipeline", knot_pipeline}, {"duality", duality},
      {"algebra", algebra},     {"diagram", diagram}};
  const auto it = table.find(name);
  if (it == table.end()) throw Error("unknown suite \"" + name + "\"");
  return it->second(o);
}

}  // namespace qholo::checks
