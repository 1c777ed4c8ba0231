#include <gtest/gtest.h>

#include <random>

#include "qholo/serialize.hpp"
#include "support/ladder_corpus.hpp"
#include "support/random_poly.hpp"

using namespace qholo;
using qholo::testing::random_poly;

TEST(Serialize, PolynomialRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const LaurentPoly p = random_poly(rng, i % 2 ? kVarsAQ : kVarsAQM, 6, 4);
    const LaurentPoly back = poly_from_json(to_json(p));
    EXPECT_EQ(back, p);
    EXPECT_EQ(back.vars(), p.vars());
  }
  const LaurentPoly huge = LaurentPoly(Integer("123456789012345678901234567890")) * LaurentPoly::variable(Var::q, -3);
  EXPECT_EQ(poly_from_json(to_json(huge)), huge);
  EXPECT_EQ(to_json(LaurentPoly::variable(Var::q, 2) - 1),
            R"({"terms":[{"coef":"-1","exps":[0,0,0]},{"coef":"1","exps":[0,2,0]}],"vars":["q"]})");
}

TEST(Serialize, RationalRoundTrip) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    LaurentPoly den;
    while (den.is_zero()) den = random_poly(rng, kVarsAQ, 3, 2);
    const RationalFn f(random_poly(rng, kVarsAQ, 4, 3), den);
    EXPECT_EQ(rational_from_json(to_json(f)), f);
  }
}

TEST(Serialize, OperatorRoundTrip) {
  std::mt19937_64 rng(13);
  for (Algebra alg : {Algebra::kWt, Algebra::kW, Algebra::kClassical}) {
    for (int i = 0; i < 20; ++i) {
      std::vector<LaurentPoly> c;
      for (int j = 0; j < 3; ++j) c.push_back(j == 1 && i % 3 == 0 ? LaurentPoly(0L) : random_poly(rng, kVarsAQM, 3, 2));
      const OreOperator p(alg, c);
      EXPECT_EQ(operator_from_json(to_json(p)), p);
    }
  }
  EXPECT_EQ(operator_from_json(to_json(OreOperator())), OreOperator());
}

TEST(Serialize, WebRoundTrip) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 30; ++i) {
    const Web w = qholo::testing::random_ladder_web(rng, 3, 12, 3);
    const Web back = validate_web(web_from_json(to_json(w.to_raw())));
    EXPECT_EQ(back.canonical_code(), w.canonical_code());
  }
  const RawWeb circle = web_from_json(R"({"vertices": [], "edges": [], "loops": [{"color": 1, "count": 1}]})");
  EXPECT_EQ(circle.loops.at(1), 1);
}

TEST(Serialize, TableRoundTrip) {
  const SequenceTable t = build_table(ColoredBraid{2, {1, 1, 1}, {1, 1}}, 0, 2);
  const SequenceTable back = table_from_json(to_json(t));
  EXPECT_EQ(back.values, t.values);
  EXPECT_EQ(back.id, t.id);
  EXPECT_EQ(back.braid.word, t.braid.word);
  EXPECT_EQ(back.framing, t.framing);
  EXPECT_EQ(back.shape, t.shape);
  TableOptions rows;
  rows.shape = ComponentColor::kRow;
  const SequenceTable r = build_table(ColoredBraid{1, {}, {1}}, 0, 2, rows);
  EXPECT_EQ(table_from_json(to_json(r)).shape, ComponentColor::kRow);
}

TEST(Serialize, Errors) {
  try {
    poly_from_json(R"({"vars": ["q"], "terms": [)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
  }
  EXPECT_THROW(poly_from_json(R"({"vars": ["x"], "terms": []})"), ParseError);
  EXPECT_THROW(poly_from_json(R"({"vars": ["q"], "terms": [{"coef": "1", "exps": [1, 0, 0]}]})"), ParseError);
  EXPECT_THROW(poly_from_json(R"({"vars": ["q"], "terms": [{"coef": "1.5", "exps": [0, 0, 0]}]})"), ParseError);
  EXPECT_THROW(rational_from_json(R"({"num": {"vars": [], "terms": []}, "den": {"vars": [], "terms": []}})"), ParseError);
  EXPECT_THROW(operator_from_json(R"({"algebra": "X", "terms": []})"), ParseError);
  EXPECT_THROW(operator_from_json(R"({"algebra": "W", "terms": [[-1, {"vars": [], "terms": []}]]})"), ParseError);
  EXPECT_THROW(web_from_json(R"({"vertices": [[0, "a", 2]], "edges": []})"), ParseError);
}
