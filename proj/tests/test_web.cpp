#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <random>

#include "qholo/ladder.hpp"
#include "qholo/qnumbers.hpp"
#include "qholo/reduce.hpp"
#include "support/ladder_corpus.hpp"
#include "support/moy_oracle.hpp"

using namespace qholo;
using qholo::testing::moy_state_sum;

namespace {

LaurentPoly qp(long c, int e) { return LaurentPoly::monomial(c, {0, e, 0}, kVarsQ); }

std::vector<Binding> at(int N) { return {Binding::a_to_q_power(N)}; }

// Theta web: one split u and one merge v joined by the edges y and z, closed by x from v to u.
// Darts: x = (0 tail at v, 1 head at u), y = (2, 3), z = (4, 5).
RawWeb theta(int cy, int cz, bool planar = true) {
  RawWeb r;
  r.edges = {{0, 1, cy + cz}, {2, 3, cy}, {4, 5, cz}};
  r.vertices = {{1, 2, 4}, planar ? std::vector<int>{5, 3, 0} : std::vector<int>{3, 5, 0}};
  return r;
}

std::vector<Web> corpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Web> out;
  for (int i = 0; i < count; ++i) out.push_back(qholo::testing::random_ladder_web(rng, 2 + i % 2, 12, 3));
  return out;
}

bool nonnegative(const LaurentPoly& p) {
  for (const auto& t : p.terms())
    if (sgn(t.coef) < 0) return false;
  return true;
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

}  // namespace

// ---------------------------------------------------------------------------
// Validation

TEST(WebValidation, CircleIsValid) {
  RawWeb r;
  r.loops[1] = 1;
  const Web w = validate_web(r);
  EXPECT_EQ(w.num_vertices(), 0);
  EXPECT_EQ(w.total_loops(), 1);
}

TEST(WebValidation, SubdividedCircleBecomesLoop) {
  RawWeb r;
  r.edges = {{0, 1, 2}, {2, 3, 2}};
  r.vertices = {{1, 2}, {3, 0}};
  const Web w = validate_web(r);
  EXPECT_EQ(w.num_vertices(), 0);
  EXPECT_EQ(w.loops().at(2), 1);
}

TEST(WebValidation, ThetaIsValid) {
  const Web w = validate_web(theta(1, 1));
  EXPECT_EQ(w.num_vertices(), 2);
  EXPECT_EQ(w.num_edges(), 3);
}

TEST(WebValidation, FlowViolation) {
  RawWeb r = theta(1, 2);
  r.edges[0].color = 4;
  try {
    validate_web(r);
    FAIL() << "expected a flow error";
  } catch (const WebError& e) {
    EXPECT_EQ(e.code(), WebErrorCode::kFlowViolation);
  }
}

TEST(WebValidation, SinkOrSource) {
  // Every edge points into u: u is a sink and v a source.
  RawWeb r;
  r.edges = {{0, 1, 2}, {3, 2, 1}, {5, 4, 1}};
  r.vertices = {{1, 2, 4}, {5, 3, 0}};
  try {
    validate_web(r);
    FAIL() << "expected a sink/source error";
  } catch (const WebError& e) {
    EXPECT_EQ(e.code(), WebErrorCode::kSinkOrSource);
  }
}

TEST(WebValidation, NonTrivalent) {
  RawWeb r;
  r.edges = {{0, 1, 1}, {2, 3, 1}};
  r.vertices = {{1, 2, 0, 3}};
  try {
    validate_web(r);
    FAIL() << "expected a trivalence error";
  } catch (const WebError& e) {
    EXPECT_EQ(e.code(), WebErrorCode::kNonTrivalent);
  }
}

TEST(WebValidation, NonPlanarRotation) {
  EXPECT_NO_THROW(validate_web(theta(1, 2, true)));
  try {
    validate_web(theta(1, 2, false));
    FAIL() << "expected a planarity error";
  } catch (const WebError& e) {
    EXPECT_EQ(e.code(), WebErrorCode::kNonPlanar);
  }
}

TEST(WebValidation, MalformedDarts) {
  RawWeb r = theta(1, 1);
  r.vertices[1][0] = 99;
  EXPECT_THROW(validate_web(r), WebError);
}

// ---------------------------------------------------------------------------
// Canonical codes

TEST(CanonicalCode, InvariantUnderRelabeling) {
  std::mt19937_64 rng(11);
  for (const Web& w : corpus(30, 5)) {
    RawWeb raw = w.to_raw();
    // Shuffle dart ids, vertex order and the starting dart of each rotation.
    std::vector<int> ids(static_cast<std::size_t>(2 * raw.edges.size()));
    std::iota(ids.begin(), ids.end(), 100);
    std::shuffle(ids.begin(), ids.end(), rng);
    auto relabel = [&](int d) { return ids[static_cast<std::size_t>(d)]; };
    for (auto& e : raw.edges) {
      e.tail = relabel(e.tail);
      e.head = relabel(e.head);
    }
    for (auto& v : raw.vertices) {
      for (int& d : v) d = relabel(d);
      std::rotate(v.begin(), v.begin() + static_cast<long>(rng() % v.size()), v.end());
    }
    std::shuffle(raw.vertices.begin(), raw.vertices.end(), rng);
    std::shuffle(raw.edges.begin(), raw.edges.end(), rng);
    EXPECT_EQ(validate_web(raw).canonical_code(), w.canonical_code());
  }
}

TEST(CanonicalCode, DistinguishesColors) {
  EXPECT_NE(validate_web(theta(1, 2)).canonical_code(), validate_web(theta(1, 1)).canonical_code());
}

// ---------------------------------------------------------------------------
// Reduction rules and small evaluations

TEST(Reduce, CircleColorOne) {
  RawWeb r;
  r.loops[1] = 1;
  const Web w = validate_web(r);
  const RationalFn unknot(LaurentPoly::variable(Var::a) - LaurentPoly::variable(Var::a, -1),
                          LaurentPoly::variable(Var::q) - LaurentPoly::variable(Var::q, -1));
  EXPECT_EQ(evaluate(w), unknot);
  EXPECT_EQ(evaluate_at_N(w, 2), qp(1, 1) + qp(1, -1));
  const WebCombination step = reduce_step(w);
  ASSERT_EQ(step.size(), 1u);
  EXPECT_EQ(step.terms()[0].coef, unknot);
  EXPECT_TRUE(step.terms()[0].web.empty());
}

TEST(Reduce, CircleColorKMatchesInterpolation) {
  for (int k = 1; k <= 4; ++k) {
    RawWeb r;
    r.loops[k] = 1;
    const Web w = validate_web(r);
    std::vector<std::pair<int, LaurentPoly>> samples;
    for (int N = 2; N <= k + 3 + k; ++N) samples.emplace_back(N, evaluate_at_N(w, N));
    EXPECT_EQ(evaluate(w), interpolate_in_a(samples, k)) << "k=" << k;
    EXPECT_EQ(evaluate(w), circle_value(k));
  }
}

TEST(Reduce, DigonOneInsideTwo) {
  // A 2-colored circle with two (1,1) bubbles; only the bubbles bound faces of degree 2.
  // The digon rule fuses a bubble's parallel edges with coefficient q + 1/q.
  RawWeb r;
  r.edges = {{0, 1, 2}, {2, 3, 1}, {4, 5, 1}, {6, 7, 2}, {8, 9, 1}, {10, 11, 1}};
  r.vertices = {{1, 2, 4}, {5, 3, 6}, {7, 8, 10}, {11, 9, 0}};
  const Web w = validate_web(r);
  const auto mv = find_move(w);
  ASSERT_TRUE(mv.has_value());
  EXPECT_EQ(mv->rule, Rule::kDigonI);
  const WebCombination step = reduce_step(w);
  ASSERT_EQ(step.size(), 1u);
  EXPECT_EQ(step.terms()[0].coef, RationalFn(qp(1, 1) + qp(1, -1)));
  EXPECT_EQ(step.terms()[0].web.num_vertices(), 2);
  EXPECT_EQ(evaluate(w), RationalFn(q_binomial(2, 1) * q_binomial(2, 1)) * circle_value(2));
}

TEST(Reduce, ThetaGolden) {
  const RationalFn expected = RationalFn(q_binomial(2, 1)) * circle_value(2);
  EXPECT_EQ(evaluate(validate_web(theta(1, 1))), expected);
  for (int N = 2; N <= 4; ++N) EXPECT_EQ(evaluate_at_N(validate_web(theta(1, 1)), N), q_binomial(2, 1) * q_binomial(N, 2));
  // Generic theta: [N choose a+b] [a+b choose a].
  EXPECT_EQ(evaluate(validate_web(theta(2, 3))), RationalFn(q_binomial(5, 2)) * circle_value(5));
}

TEST(Reduce, EmptyWebIsStuck) { EXPECT_THROW(reduce_step(Web{}), StuckError); }

TEST(Reduce, StepLimit) {
  const Web w = annular_ladder({2, 1, 2}, {{0, LadderStep::kF, 1}, {1, LadderStep::kE, 1}, {0, LadderStep::kE, 1}, {1, LadderStep::kF, 1}});
  Evaluator::Options opts;
  opts.step_limit = 1;
  Evaluator ev(opts);
  try {
    ev.symbolic(w);
    FAIL() << "expected the step budget to run out";
  } catch (const StepLimitError& e) {
    EXPECT_FALSE(e.trace().empty());
  }
}

TEST(Reduce, StepLimitFromEnvironment) {
  ::setenv("QHOLO_STEP_LIMIT", "1234", 1);
  EXPECT_EQ(default_step_limit(), 1234);
  ::setenv("QHOLO_STEP_LIMIT", "junk", 1);
  EXPECT_EQ(default_step_limit(), 1000000);
  ::unsetenv("QHOLO_STEP_LIMIT");
  EXPECT_EQ(default_step_limit(), 1000000);
}

TEST(Reduce, ColorsAboveNVanish) {
  RawWeb r;
  r.loops[3] = 1;
  EXPECT_TRUE(evaluate_at_N(validate_web(r), 2).is_zero());
}

// ---------------------------------------------------------------------------
// Coloring lattice

TEST(ColoringLattice, SmallExamples) {
  RawWeb c;
  c.loops[1] = 1;
  EXPECT_EQ(coloring_basis(underlying_graph(validate_web(c))).size(), 1u);
  EXPECT_EQ(coloring_basis(underlying_graph(validate_web(theta(1, 1)))).size(), 2u);
}

TEST(ColoringLattice, CorpusRankMatchesFacesAndElimination) {
  for (const Web& w : corpus(60, 21)) {
    const FlowGraph g = underlying_graph(w);
    const auto basis = coloring_basis(g);
    const int r = static_cast<int>(basis.size());
    EXPECT_EQ(r, bounded_face_count(w)) << w.canonical_code();
    // Independent count: r = |E| - rank(incidence matrix).
    std::vector<std::vector<Integer>> inc(static_cast<std::size_t>(g.num_vertices),
                                          std::vector<Integer>(g.edges.size(), 0));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      inc[static_cast<std::size_t>(g.edges[e].first)][e] -= 1;
      inc[static_cast<std::size_t>(g.edges[e].second)][e] += 1;
    }
    EXPECT_EQ(r, static_cast<int>(g.edges.size()) - rank_of(inc));
    // Every basis vector is a flow, the basis is independent, and some r edges carry an
    // identity block (so integer flows have integer coordinates).
    std::vector<std::vector<Integer>> rows;
    for (const auto& b : basis) {
      std::vector<Integer> row(b.begin(), b.end());
      rows.push_back(row);
      std::vector<long> div(static_cast<std::size_t>(g.num_vertices), 0);
      for (std::size_t e = 0; e < b.size(); ++e) {
        div[static_cast<std::size_t>(g.edges[e].first)] -= b[e];
        div[static_cast<std::size_t>(g.edges[e].second)] += b[e];
      }
      for (long d : div) EXPECT_EQ(d, 0);
    }
    EXPECT_EQ(rank_of(rows), r);
    int unit_columns = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      int ones = 0, zeros = 0;
      for (const auto& b : basis) {
        if (b[e] == 1) ++ones;
        else if (b[e] == 0) ++zeros;
      }
      if (ones == 1 && zeros == r - 1) ++unit_columns;
    }
    EXPECT_GE(unit_columns, r);
  }
}

TEST(ColoringLattice, EveryCorpusColoringIsAFlow) {
  for (const Web& w : corpus(30, 8)) {
    const FlowGraph g = underlying_graph(w);
    std::vector<long> div(static_cast<std::size_t>(g.num_vertices), 0);
    const auto& colors = w.colors();
    for (std::size_t e = 0; e < colors.size(); ++e) {
      div[static_cast<std::size_t>(g.edges[e].first)] -= colors[e];
      div[static_cast<std::size_t>(g.edges[e].second)] += colors[e];
    }
    for (long d : div) EXPECT_EQ(d, 0);
  }
}

// ---------------------------------------------------------------------------
// Corpus properties

TEST(WebCorpus, AgreesWithStateSum) {
  for (const Web& w : corpus(80, 1))
    for (int N = 2; N <= 4; ++N) EXPECT_EQ(evaluate_at_N(w, N), moy_state_sum(w, N)) << w.canonical_code() << " N=" << N;
}

TEST(WebCorpus, StateSumIndependentOfOuterFace) {
  for (const Web& w : corpus(20, 4)) {
    if (w.count_map_components() != 1) continue;
    const int faces = static_cast<int>(w.faces().cycles.size());
    for (int f = 0; f < faces; ++f) EXPECT_EQ(moy_state_sum(w, 3, f), moy_state_sum(w, 3, 0));
  }
}

TEST(WebCorpus, ConfluenceAcrossSeeds) {
  const auto webs = corpus(120, 2);
  for (std::size_t i = 0; i < webs.size(); ++i) {
    Evaluator a(Evaluator::Options{ReductionPolicy{0}, 0});
    Evaluator b(Evaluator::Options{ReductionPolicy{1000 + i}, 0});
    EXPECT_EQ(a.symbolic(webs[i]), b.symbolic(webs[i])) << webs[i].canonical_code();
  }
}

TEST(WebCorpus, PositivityAndCoherence) {
  for (const Web& w : corpus(80, 3)) {
    const RationalFn s = evaluate(w);
    for (int N = 2; N <= 4; ++N) {
      const LaurentPoly x = evaluate_at_N(w, N);
      EXPECT_TRUE(nonnegative(x)) << x.to_string();
      EXPECT_EQ(specialize(s, at(N)), RationalFn(x));
    }
  }
}

TEST(WebCorpus, DisjointUnionMultiplies) {
  const auto webs = corpus(40, 9);
  for (std::size_t i = 0; i + 1 < webs.size(); i += 2) {
    const Web u = Web::disjoint_union(webs[i], webs[i + 1]);
    EXPECT_EQ(evaluate(u), evaluate(webs[i]) * evaluate(webs[i + 1]));
  }
}

TEST(WebCorpus, LargerLaddersTerminateAndAgree) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 12; ++i) {
    const auto spec = qholo::testing::random_ladder(rng, 4, 12, 2);
    const Web w = annular_ladder(spec.colors, spec.steps);
    Evaluator a(Evaluator::Options{ReductionPolicy{0}, 0});
    Evaluator b(Evaluator::Options{ReductionPolicy{99u + static_cast<unsigned>(i)}, 0});
    const RationalFn s = a.symbolic(w);
    EXPECT_EQ(s, b.symbolic(w));
    EXPECT_EQ(specialize(s, at(3)), RationalFn(a.at_N(w, 3)));
  }
}

// ---------------------------------------------------------------------------
// Ladders

TEST(Ladder, ColorBookkeeping) {
  EXPECT_EQ(ladder_colors({2, 1}, {{0, LadderStep::kF, 2}}), (std::vector<int>{0, 3}));
  EXPECT_THROW(ladder_colors({1, 1}, {{0, LadderStep::kF, 2}}), Error);
  EXPECT_THROW(annular_ladder({1, 1}, {{0, LadderStep::kF, 1}}), Error);
}

TEST(Ladder, SquareRelationAtEqualWeights) {
  // E F 1_(k,k) = F E 1_(k,k): both closures evaluate alike.
  for (int k = 1; k <= 3; ++k) {
    const Web ef = annular_ladder({k, k}, {{0, LadderStep::kF, 1}, {0, LadderStep::kE, 1}});
    const Web fe = annular_ladder({k, k}, {{0, LadderStep::kE, 1}, {0, LadderStep::kF, 1}});
    EXPECT_EQ(evaluate(ef), evaluate(fe));
  }
}
