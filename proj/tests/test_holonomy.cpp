#include <gtest/gtest.h>

#include "qholo/holonomy.hpp"
#include "qholo/qnumbers.hpp"

using namespace qholo;

namespace {

LaurentPoly q(int k = 1) { return LaurentPoly::variable(Var::q, k); }
LaurentPoly a(int k = 1) { return LaurentPoly::variable(Var::a, k); }
LaurentPoly M(int k = 1) { return LaurentPoly::variable(Var::M, k); }
OreOperator op(std::vector<LaurentPoly> c) { return OreOperator(Algebra::kWt, std::move(c)); }

const ColoredBraid kUnknot{1, {}, {1}};
const ColoredBraid kTrefoil{2, {1, 1, 1}, {1, 1}};
const ColoredBraid kHopf{2, {1, 1}, {1, 1}};

SequenceTable synthetic(std::vector<RationalFn> values) {
  SequenceTable t;
  t.id = "synthetic";
  t.values = std::move(values);
  return t;
}

SequenceTable q_powers(int n_max) {
  std::vector<RationalFn> v;
  for (int n = 0; n <= n_max; ++n) v.emplace_back(q(n));
  return synthetic(std::move(v));
}

const SequenceTable& unknot_table() {
  static const SequenceTable t = build_table(kUnknot, 0, 10);
  return t;
}

// (a q^2 M^2 - a) L - (a^2 q - q M^2), read off from f_{n+1}/f_n = [N-n]/[n+1].
OreOperator unknot_operator() { return op({-(a(2) * q() - q() * M(2)), a() * q(2) * M(2) - a()}); }

}  // namespace

TEST(BuildTable, UnknotIsColoredCircle) {
  const SequenceTable& t = unknot_table();
  ASSERT_EQ(t.n_max(), 10);
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(t.values[static_cast<std::size_t>(n)], n_binomial(0, n)) << n;
  EXPECT_EQ(t.values[0], RationalFn(1L));
}

TEST(BuildTable, ZeroFramingDividesOutSelfWrithe) {
  TableOptions bb;
  bb.framing = Framing::kBlackboard;
  const SequenceTable framed = build_table(kTrefoil, 0, 3, bb);
  const SequenceTable zero = build_table(kTrefoil, 0, 3);
  for (int n = 0; n <= 3; ++n) {
    const RationalFn ff = n == 0 ? RationalFn(1L) : framing_factor(n).pow(3);
    EXPECT_EQ(framed.values[static_cast<std::size_t>(n)], zero.values[static_cast<std::size_t>(n)] * ff);
  }
  // The curl factor for a single strand is exactly a, so the n = 1 entry is the framed
  // HOMFLY value divided by a^3.
  EXPECT_EQ(zero.values[1] * RationalFn(a(3)), colored_homfly_columns(kTrefoil));
  EXPECT_EQ(kTrefoil.self_writhes(), std::vector<int>{3});
  EXPECT_EQ(kHopf.self_writhes(), (std::vector<int>{0, 0}));
}

TEST(BuildTable, ColorZeroDeletesTheComponent) {
  const SequenceTable t = build_table(kHopf, 1, 2);
  EXPECT_EQ(t.values[0], n_binomial(0, 1));
  EXPECT_EQ(t.values[1], colored_homfly_columns(kHopf));
  EXPECT_THROW(build_table(kHopf, 2, 2), Error);
  EXPECT_THROW(build_table(kHopf, 0, -1), Error);
}

TEST(BuildTable, ThreadCountDoesNotChangeValues) {
  TableOptions one, four;
  one.threads = 1;
  four.threads = 4;
  EXPECT_EQ(build_table(kTrefoil, 0, 3, one).values, build_table(kTrefoil, 0, 3, four).values);
}

TEST(BuildTable, RowTablesSurviveSpecialization) {
  TableOptions rows;
  rows.shape = ComponentColor::kRow;
  const SequenceTable t = build_table(ColoredBraid{1, {}, {1}}, 0, 6, rows);
  for (int n = 0; n <= 6; ++n) {
    const RationalFn col = n_binomial(0, n).q_inverted();
    EXPECT_EQ(t.values[static_cast<std::size_t>(n)], n % 2 ? -col : col) << n;
  }
  // Columns past N vanish at a = q^N; rows are the symmetric powers and never do.
  const SequenceView at2 = specialize_table(t, 2);
  for (const auto& v : at2) EXPECT_FALSE(v.is_zero());
  const SequenceView col2 = specialize_table(build_table(ColoredBraid{1, {}, {1}}, 0, 6), 2);
  EXPECT_TRUE(col2[3].is_zero());

  const SearchResult found = search_recursion(t);
  ASSERT_TRUE(found.op.has_value());
  EXPECT_EQ(found.op->order(), 1);
  const SpecializationReport r = specialization_suite(*found.op, t, {2, 3, 4});
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.classical_agree);
}

TEST(Guess, QPowers) {
  GuessReport rep;
  const auto p = guess_recursion(q_powers(10), {1, 1, 0, 1}, &rep);
  ASSERT_TRUE(p.has_value());
  // M acts by q^n, so the annihilator of q^n is L - q.
  EXPECT_EQ(*p, op({-q(), LaurentPoly(1L)}));
  EXPECT_EQ(rep.held_out, (std::vector<int>{8, 9}));
  // L - q and M (L - q) both fit the box; the right gcd returns the first.
  EXPECT_EQ(rep.kernel_dim, 2);
}

TEST(Guess, UnknotFirstOrder) {
  GuessReport rep;
  const auto p = guess_recursion(unknot_table(), {1, 2, 2, 2}, &rep);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(*p, content_free(unknot_operator()));
  EXPECT_EQ(p->order(), 1);
  EXPECT_EQ(content_free(*p), *p);
  EXPECT_EQ(rep.unknowns, 54);
  const VerifyReport v = verify_recursion(*p, unknot_table(), rep.fit_indices.back());
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.held_out, (std::vector<int>{8, 9}));
}

TEST(Guess, TooSmallAnsatzFindsNothing) {
  // An order-0 annihilator would force the sequence to vanish.
  EXPECT_FALSE(guess_recursion(unknot_table(), {0, 2, 2, 2}).has_value());
  EXPECT_FALSE(guess_recursion(unknot_table(), {1, 1, 2, 2}).has_value());
}

TEST(Guess, InsufficientDataNamesRequiredNmax) {
  SequenceTable t = unknot_table();
  t.values.resize(3);
  try {
    guess_recursion(t, {1, 2, 2, 2});
    FAIL() << "expected InsufficientData";
  } catch (const InsufficientData& e) {
    EXPECT_GE(e.required_n_max(), 3);
    EXPECT_NE(std::string(e.what()).find("n="), std::string::npos);
  }
  t.values.resize(5);
  try {
    const auto p = guess_recursion(t, {1, 4, 4, 4});
    // If something comes back, it must still be right.
    if (p) EXPECT_TRUE(verify_recursion(*p, unknot_table()).pass);
  } catch (const InsufficientData& e) {
    EXPECT_GT(e.required_n_max(), 4);
  }
  EXPECT_THROW(guess_recursion(t, {1, -1, 2, 2}), Error);
}

TEST(Guess, EnlargingTheTableKeepsTheOperator) {
  SequenceTable small = unknot_table();
  small.values.resize(8);
  const auto p = guess_recursion(small, {1, 2, 2, 2});
  const auto r = guess_recursion(unknot_table(), {1, 2, 2, 2});
  ASSERT_TRUE(p && r);
  EXPECT_EQ(*p, *r);
  // A larger ansatz sees multiples of the same operator; the right gcd recovers it.
  const auto big = guess_recursion(unknot_table(), {1, 3, 2, 3});
  ASSERT_TRUE(big);
  EXPECT_TRUE(right_divides(*r, *big));
}

TEST(Search, UnknotIsFoundAtTheSmallestBox) {
  const SearchResult s = search_recursion(unknot_table(), {1, 3, 3});
  ASSERT_TRUE(s.op.has_value());
  EXPECT_EQ(s.ansatz.order, 1);
  EXPECT_EQ(s.ansatz.m_deg, 2);
  EXPECT_EQ(s.ansatz.a_deg, 2);
  EXPECT_EQ(*s.op, content_free(unknot_operator()));
  // Every box below it in the search order came back empty.
  EXPECT_EQ(s.exhausted.size(), 4u + 4u + 2u);
}

TEST(Verify, Examples) {
  const SequenceTable t = q_powers(10);
  const VerifyReport ok = verify_recursion(op({-q(), LaurentPoly(1L)}), t, 7);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.checked, 10);
  EXPECT_EQ(ok.held_out, (std::vector<int>{8, 9}));
  const VerifyReport bad = verify_recursion(op({-M(), LaurentPoly(1L)}), t);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.first_failing, 0);
  // L - qM kills q^{n(n+1)/2}; on q^n it only happens to vanish at n = 0.
  EXPECT_EQ(verify_recursion(op({-q() * M(), LaurentPoly(1L)}), t).first_failing, 1);
  EXPECT_THROW(verify_recursion(op({-q(), LaurentPoly(1L)}), t, 8), Error);
}

TEST(Specialization, UnknotSuite) {
  const OreOperator p = content_free(unknot_operator());
  const SpecializationReport r = specialization_suite(p, unknot_table(), {2, 3, 4});
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.classical_agree);
  ASSERT_EQ(r.per_N.size(), 3u);
  for (const auto& x : r.per_N) {
    EXPECT_TRUE(x.annihilates) << x.N;
    EXPECT_EQ(x.classical, r.classical);
  }
  // At a = q = 1 the unknot operator becomes (M^2 - 1)(L + 1).
  const LaurentPoly m2 = M(2) - 1;
  EXPECT_EQ(r.classical, OreOperator(Algebra::kClassical, {m2, m2}));
}

TEST(Specialization, AnnihilatesTheNEqualsTwoTable) {
  const OreOperator p = content_free(unknot_operator());
  const Binding at2[] = {Binding::a_to_q_power(2)};
  const SequenceView g = op_apply(op_specialize(p, at2), specialize_table(unknot_table(), 2));
  for (const auto& x : g) EXPECT_TRUE(x.is_zero());
}

TEST(Specialization, DiagramCoherenceOnResiduals) {
  // A wrong operator leaves residuals; specializing them equals the residuals of the
  // specialized operator on the specialized table.
  const OreOperator p = op({-q(), a() * M()});
  const SequenceView r = op_apply(p, unknot_table().values);
  for (int N = 2; N <= 4; ++N) {
    const Binding atN[] = {Binding::a_to_q_power(N)};
    const SequenceView s = op_apply(op_specialize(p, atN), specialize_table(unknot_table(), N));
    ASSERT_EQ(r.size(), s.size());
    for (std::size_t n = 0; n < r.size(); ++n) EXPECT_EQ(specialize(r[n], atN), s[n]) << N << " " << n;
  }
}

TEST(Specialization, VacuousOnZeroTable) {
  const SequenceTable zero = synthetic(std::vector<RationalFn>(5, RationalFn(0L)));
  const SpecializationReport r = specialization_suite(OreOperator::scalar(Algebra::kWt, LaurentPoly(1L)), zero, {2, 3, 4});
  EXPECT_TRUE(r.pass);
}

TEST(Specialization, ReportsFailingN) {
  const OreOperator wrong = op({-q(), LaurentPoly(1L)});
  const SpecializationReport r = specialization_suite(wrong, unknot_table(), {2, 3});
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.per_N[0].annihilates);
  EXPECT_EQ(r.per_N[0].first_failing, 0);
}

TEST(Conjecture, ExactDivision) {
  const LaurentPoly b = M(2) + 1;
  const OreOperator p = op({-b * q(), b * a(3)});  // at a = q = 1: (L - 1)(M^2 + 1)
  const ConjectureReport r = conjecture_report(p, parse_apoly(R"([{"coef": 1, "e_M": 0, "e_L": 1},
                                                                 {"coef": "-1", "e_M": 0, "e_L": 0}])"));
  EXPECT_TRUE(r.divides);
  ASSERT_TRUE(r.quotient.has_value());
  EXPECT_EQ(*r.quotient, b);
  EXPECT_STREQ(ConjectureReport::kLabel, "experiment — conjecture, not a theorem");
}

TEST(Conjecture, DivisionNotExactIsAFinding) {
  const LaurentPoly b = M(2) + 1;
  const OreOperator p = op({-b, b});
  const ConjectureReport r = conjecture_report(p, parse_apoly(R"([{"coef": 1, "e_M": 1, "e_L": 1},
                                                                 {"coef": -1, "e_M": 0, "e_L": 0}])"));
  EXPECT_FALSE(r.divides);
  EXPECT_EQ(r.finding, "division not exact");
  // Dividing by M^2 + 1 alone leaves L - 1, which is not a function of M.
  const ConjectureReport s = conjecture_report(p, parse_apoly(R"([{"coef": 1, "e_M": 2, "e_L": 0},
                                                                 {"coef": 1, "e_M": 0, "e_L": 0}])"));
  EXPECT_FALSE(s.divides);
}

TEST(Conjecture, MalformedFile) {
  EXPECT_THROW(parse_apoly("[{\"coef\": 1, \"e_M\": 0}]"), ParseError);
  EXPECT_THROW(parse_apoly("[]"), ParseError);
  EXPECT_THROW(parse_apoly("{"), ParseError);
  EXPECT_THROW(parse_apoly(R"([{"coef": "x", "e_M": 0, "e_L": 1}])"), ParseError);
}
