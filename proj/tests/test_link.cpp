#include <gtest/gtest.h>

#include <random>

#include "qholo/link.hpp"
#include "qholo/qnumbers.hpp"
#include "support/hecke_oracle.hpp"

using namespace qholo;
using qholo::testing::hecke_homfly;

namespace {

LaurentPoly q(int k = 1) { return LaurentPoly::variable(Var::q, k); }
LaurentPoly a(int k = 1) { return LaurentPoly::variable(Var::a, k); }

ColoredBraid uncolored(int strands, std::vector<int> word) {
  return ColoredBraid{strands, std::move(word), std::vector<int>(static_cast<std::size_t>(strands), 1)};
}

std::vector<int> random_word(std::mt19937_64& rng, int strands, int length) {
  std::uniform_int_distribution<int> gen(1, strands - 1);
  std::vector<int> w;
  for (int i = 0; i < length; ++i) w.push_back(rng() % 2 ? gen(rng) : -gen(rng));
  return w;
}

ColoredBraid colored(int strands, std::vector<int> word, const std::vector<int>& comp_colors) {
  ColoredBraid b{strands, std::move(word), std::vector<int>(static_cast<std::size_t>(strands), 1)};
  return b.with_component_colors(comp_colors);
}

ColoredBraid random_colored(std::mt19937_64& rng, int strands, std::vector<int> word, int max_color) {
  ColoredBraid b = uncolored(strands, std::move(word));
  std::vector<int> cc;
  for (int i = 0; i < b.num_components(); ++i) cc.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(max_color)));
  return b.with_component_colors(cc);
}

// Habiro's cyclotomic form of the colored Jones polynomial of the figure-eight knot,
// (d)-dimensional representation, normalized by the unknot.
LaurentPoly figure_eight_habiro(int d) {
  LaurentPoly sum(0L), term(1L);
  for (int k = 0; k < d; ++k) {
    if (k > 0) term *= (q(d + k) - q(-d - k)) * (q(d - k) - q(k - d));
    sum += term;
  }
  return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// Braid input

TEST(BraidParse, ThreeFormatsAgree) {
  const ColoredBraid x = parse_braid("s=2; w=[1,1,1]; colors=[2,2]");
  const ColoredBraid y = parse_braid("2;[1,1,1];[2,2]");
  const ColoredBraid z = parse_braid(R"({"strands": 2, "word": [1, 1, 1], "colors": [2, 2]})");
  for (const auto& b : {y, z}) {
    EXPECT_EQ(b.strands, x.strands);
    EXPECT_EQ(b.word, x.word);
    EXPECT_EQ(b.colors, x.colors);
  }
  EXPECT_EQ(x.word, (std::vector<int>{1, 1, 1}));
}

TEST(BraidParse, RoundTrip) {
  const ColoredBraid b{3, {1, -2, 1, -2}, {1, 1, 1}};
  const ColoredBraid c = parse_braid(braid_to_string(b));
  EXPECT_EQ(c.strands, 3);
  EXPECT_EQ(c.word, b.word);
  EXPECT_EQ(c.colors, b.colors);
}

TEST(BraidParse, ErrorsCarryPositions) {
  const std::string bad_gen = "2;[1,3,1];[1,1]";
  try {
    parse_braid(bad_gen);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(bad_gen[e.position()], '3') << e.what();
  }
  const std::string bad_char = "2;[1,x];[1,1]";
  try {
    parse_braid(bad_char);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(bad_char[e.position()], 'x') << e.what();
  }
  EXPECT_THROW(parse_braid("2;[1];[1,1,1]"), ParseError);   // wrong color count
  EXPECT_THROW(parse_braid("2;[1];[1,2]"), ParseError);     // colors differ along a component
  EXPECT_THROW(parse_braid("2;[0];[1,1]"), ParseError);     // generator 0
  EXPECT_THROW(parse_braid("{\"strands\": 2, \"word\": [1]"), ParseError);
  EXPECT_THROW(parse_braid(""), ParseError);
}

TEST(BraidParse, ColorsConsistentAcrossCycleAccepted) {
  EXPECT_NO_THROW(parse_braid("3;[1,2];[4,4,4]"));
  EXPECT_NO_THROW(parse_braid("3;[1,1];[2,2,5]"));
}

TEST(Braid, CyclesAndWrithe) {
  EXPECT_EQ(uncolored(3, {1, 2}).num_components(), 1);
  EXPECT_EQ(uncolored(3, {1}).num_components(), 2);
  EXPECT_EQ(uncolored(2, {1, 1}).num_components(), 2);
  EXPECT_EQ(uncolored(4, {}).num_components(), 4);
  EXPECT_EQ(uncolored(3, {1, -2, 1, -2}).writhe(), 0);
  EXPECT_EQ(uncolored(2, {1, 1, 1}).writhe(), 3);
  const ColoredBraid b = uncolored(3, {1}).with_component_colors({2, 3});
  EXPECT_EQ(b.colors, (std::vector<int>{2, 2, 3}));
}

// ---------------------------------------------------------------------------
// Crossing expansion

TEST(CrossingExpansion, TrefoilColorTwoHasTwentySevenTerms) {
  const ColoredBraid b{2, {1, 1, 1}, {2, 2}};
  EXPECT_EQ(expand_crossings(b).size(), 27u);
  EXPECT_LE(resolve_to_webs(b).size(), 27u);
}

TEST(CrossingExpansion, ZeroColorIsSingleTerm) {
  const ColoredBraid b{2, {1, -1}, {0, 0}};
  const auto terms = expand_crossings(b);
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0].sign, 1);
  EXPECT_EQ(terms[0].q_power, 0);
}

TEST(CrossingExpansion, SingleCrossingColorOne) {
  // One crossing of two 1-strands: the identity and the rung square.
  const auto terms = expand_crossings(ColoredBraid{2, {1}, {1, 1}});
  EXPECT_EQ(terms.size(), 2u);
}

// ---------------------------------------------------------------------------
// Link invariants

TEST(LinkInvariant, UnknotAndFramingFactors) {
  const RationalFn unknot(a() - a(-1), q() - q(-1));
  EXPECT_EQ(colored_homfly_columns(ColoredBraid{1, {}, {1}}), unknot);
  EXPECT_EQ(framing_factor(1), RationalFn(a()));
  EXPECT_EQ(framing_factor(1, false), RationalFn(a(-1)));
  for (int n = 2; n <= 3; ++n) {
    EXPECT_EQ(framing_factor(n), RationalFn(a(n) * q(-n * (n - 1))));
    EXPECT_EQ(framing_factor(n, false), RationalFn(a(-n) * q(n * (n - 1))));
  }
}

TEST(LinkInvariant, MatchesHeckeTraceOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    const int strands = 2 + i % 3;
    const auto word = random_word(rng, strands, 1 + static_cast<int>(rng() % 7));
    EXPECT_EQ(colored_homfly_columns(uncolored(strands, word)), hecke_homfly(strands, word))
        << braid_to_string(uncolored(strands, word));
  }
}

TEST(LinkInvariant, SkeinRelation) {
  std::mt19937_64 rng(5);
  const RationalFn z(q() - q(-1));
  for (int i = 0; i < 20; ++i) {
    const int strands = 2 + i % 3;
    auto left = random_word(rng, strands, static_cast<int>(rng() % 3));
    auto right = random_word(rng, strands, static_cast<int>(rng() % 3));
    const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(strands - 1));
    auto with = [&](std::vector<int> mid) {
      std::vector<int> w = left;
      w.insert(w.end(), mid.begin(), mid.end());
      w.insert(w.end(), right.begin(), right.end());
      return colored_homfly_columns(uncolored(strands, w));
    };
    EXPECT_EQ(with({g}) - with({-g}), z * with({}));
  }
}

TEST(LinkInvariant, ReidemeisterTwoInContext) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 12; ++i) {
    const int strands = 2 + i % 2;
    auto w = random_word(rng, strands, 2);
    const ColoredBraid base = random_colored(rng, strands, w, 2);
    const int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(strands - 1));
    std::vector<int> w2 = w;
    const auto pos = static_cast<long>(rng() % (w.size() + 1));
    w2.insert(w2.begin() + pos, {g, -g});
    const ColoredBraid ext{strands, w2, base.colors};
    EXPECT_EQ(colored_homfly_columns(ext), colored_homfly_columns(base)) << braid_to_string(ext);
  }
}

TEST(LinkInvariant, ReidemeisterThreeInContext) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 6; ++i) {
    auto tail = random_word(rng, 3, 1);
    std::vector<int> x = {1, 2, 1}, y = {2, 1, 2};
    x.insert(x.end(), tail.begin(), tail.end());
    y.insert(y.end(), tail.begin(), tail.end());
    // Both words induce the same permutation, so the same component colors apply.
    const ColoredBraid bx = random_colored(rng, 3, x, 2);
    const ColoredBraid by{3, y, bx.colors};
    EXPECT_EQ(colored_homfly_columns(bx), colored_homfly_columns(by)) << braid_to_string(bx);
  }
}

TEST(LinkInvariant, ConjugationAndStabilization) {
  // Trefoil colored 2, conjugated by sigma_1 on three strands and stabilized.
  const ColoredBraid t{2, {1, 1, 1}, {2, 2}};
  const RationalFn base = colored_homfly_columns(t);
  EXPECT_EQ(colored_homfly_columns(ColoredBraid{2, {1, 1, 1, 1, -1}, {2, 2}}), base);
  EXPECT_EQ(colored_homfly_columns(ColoredBraid{3, {1, 1, 1, 2}, {2, 2, 2}}), framing_factor(2) * base);
  EXPECT_EQ(colored_homfly_columns(ColoredBraid{3, {1, 1, 1, -2}, {2, 2, 2}}), framing_factor(2, false) * base);
}

TEST(LinkInvariant, ComponentOrderIndependence) {
  // Rotating the closed braid about a vertical axis sends sigma_i to sigma_{n-i}. For
  // [1,1,2] the single strand comes first; for [2,2,1] it comes last.
  for (auto [m, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}}) {
    const ColoredBraid x = colored(3, {1, 1, 2}, {m, n});
    const ColoredBraid y = colored(3, {2, 2, 1}, {n, m});
    EXPECT_EQ(x.component_of_position(), (std::vector<int>{0, 1, 1}));
    EXPECT_EQ(y.component_of_position(), (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(colored_homfly_columns(x), colored_homfly_columns(y)) << m << "," << n;
  }
}

TEST(LinkInvariant, SpecializationCoherence) {
  const ColoredBraid b{3, {1, -2, 1, -2}, {2, 2, 2}};
  const RationalFn s = colored_homfly_columns(b);
  for (int N = 2; N <= 4; ++N) {
    const std::vector<Binding> at{Binding::a_to_q_power(N)};
    EXPECT_EQ(specialize(s, at), RationalFn(colored_homfly_columns_at_N(b, N)));
  }
}

// ---------------------------------------------------------------------------
// Row colors

TEST(RowColors, UnknotIsSymmetricPowerDimension) {
  for (int n = 1; n <= 3; ++n)
    EXPECT_EQ(colored_homfly(ColoredBraid{1, {}, {1}}, {{ComponentColor::kRow, n}}), n_binomial(n - 1, n));
}

TEST(RowColors, FigureEightAtNTwoMatchesCyclotomicFormula) {
  const ColoredBraid f8{3, {1, -2, 1, -2}, {1, 1, 1}};
  const std::vector<Binding> at{Binding::a_to_q_power(2)};
  for (int n = 1; n <= 3; ++n) {
    const RationalFn x = colored_homfly(f8, {{ComponentColor::kRow, n}});
    const RationalFn u = colored_homfly(ColoredBraid{1, {}, {1}}, {{ComponentColor::kRow, n}});
    EXPECT_EQ(specialize(x / u, at), RationalFn(figure_eight_habiro(n + 1))) << "n=" << n;
  }
}

TEST(RowColors, ColumnOneEqualsRowOneUpToConvention) {
  const ColoredBraid t{2, {1, 1, 1}, {1, 1}};
  EXPECT_EQ(colored_homfly(t, {{ComponentColor::kRow, 1}}), colored_homfly(t, {{ComponentColor::kColumn, 1}}).q_inverted() * RationalFn(-1L));
}

TEST(RowColors, MixedAndMismatchedSpecsRejected) {
  const ColoredBraid hopf{2, {1, 1}, {1, 1}};
  EXPECT_THROW(colored_homfly(hopf, {{ComponentColor::kRow, 1}, {ComponentColor::kColumn, 1}}), Error);
  EXPECT_THROW(colored_homfly(hopf, {{ComponentColor::kRow, 1}}), Error);
  EXPECT_NO_THROW(colored_homfly(hopf, {{ComponentColor::kRow, 1}, {ComponentColor::kRow, 2}}));
}
