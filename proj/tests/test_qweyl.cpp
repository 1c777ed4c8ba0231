#include <gtest/gtest.h>

#include <random>

#include "qholo/qnumbers.hpp"
#include "qholo/qweyl.hpp"
#include "support/random_poly.hpp"

using namespace qholo;
using qholo::testing::random_nonneg_poly;
using qholo::testing::random_poly;

namespace {


LaurentPoly q(int k = 1) { return LaurentPoly::variable(Var::q, k); }
LaurentPoly a(int k = 1) { return LaurentPoly::variable(Var::a, k); }
LaurentPoly M(int k = 1) { return LaurentPoly::variable(Var::M, k); }

OreOperator op(std::vector<LaurentPoly> c) { return OreOperator(Algebra::kWt, std::move(c)); }
const OreOperator kL = OreOperator::L();
OreOperator scalar(const LaurentPoly& c) { return OreOperator::scalar(Algebra::kWt, c); }

OreOperator random_op(std::mt19937_64& rng, int max_order) {
  while (true) {
    const int d = static_cast<int>(rng() % static_cast<unsigned>(max_order + 1));
    std::vector<LaurentPoly> c;
    for (int j = 0; j <= d; ++j) c.push_back(random_nonneg_poly(rng, kVarsAQM, 3, 2));
    OreOperator p = op(std::move(c));
    if (!p.is_zero()) return p;
  }
}

SequenceView random_sequence(std::mt19937_64& rng, int length) {
  SequenceView f;
  for (int i = 0; i < length; ++i) {
    LaurentPoly den;
    while (den.is_zero()) den = random_poly(rng, kVarsAQ, 2, 2);
    f.emplace_back(random_poly(rng, kVarsAQ, 3, 2), den);
  }
  return f;
}

SequenceView q_power_sequence(int length) {
  SequenceView f;
  for (int n = 0; n < length; ++n) f.emplace_back(q(n));
  return f;
}

// f_n = q^{n(n+1)/2}, so f_{n+1} = q * q^n * f_n.
SequenceView q_triangular_sequence(int length) {
  SequenceView f;
  for (int n = 0; n < length; ++n) f.emplace_back(q(n * (n + 1) / 2));
  return f;
}

bool all_zero(const SequenceView& s) {
  for (const auto& x : s)
    if (!x.is_zero()) return false;
  return true;
}

// Colored unknot values f_n = [N choose n] and the first-order operator read off from
// f_{n+1}/f_n = [N-n]/[n+1], cleared of denominators.
SequenceView unknot_table(int n_max) {
  SequenceView f;
  for (int n = 0; n <= n_max; ++n) f.push_back(n_binomial(0, n));
  return f;
}
OreOperator unknot_operator() {
  return op({-(a(2) * q() - q() * M(2)), a() * q(2) * M(2) - a()});
}

}  // namespace

TEST(OreMultiply, CommutationRelation) {
  const OreOperator m = scalar(M());
  EXPECT_EQ(op_multiply(kL, m), op({LaurentPoly(0L), q() * M()}));
  EXPECT_EQ(op_multiply(OreOperator::L(Algebra::kWt, 2), m), op({LaurentPoly(0L), LaurentPoly(0L), q(2) * M()}));
  EXPECT_EQ(op_multiply(m, kL), op({LaurentPoly(0L), M()}));
}

TEST(OreMultiply, ProductMatchesActionOracle) {
  const OreOperator x = kL - scalar(q() * M());
  const OreOperator y = kL + scalar(q() * M());
  const OreOperator xy = op_multiply(x, y);
  // Expanding by hand: L*qM = q^2 M L and (-qM)(qM) = -q^2 M^2.
  EXPECT_EQ(xy, op({-q(2) * M(2), (q(2) - q()) * M(), LaurentPoly(1L)}));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    const SequenceView f = random_sequence(rng, 6);
    EXPECT_EQ(op_apply(xy, f), op_apply(x, op_apply(y, f)));
  }
}

TEST(OreMultiply, Associativity) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const OreOperator x = random_op(rng, 2), y = random_op(rng, 2), z = random_op(rng, 2);
    EXPECT_EQ(op_multiply(op_multiply(x, y), z), op_multiply(x, op_multiply(y, z)));
  }
}

TEST(OreMultiply, AlgebraMismatchThrows) {
  EXPECT_THROW(op_multiply(kL, OreOperator::L(Algebra::kW)), Error);
}

TEST(OreApply, Examples) {
  // M acts by q^n, so q^n is killed by L - q while L - qM kills q^{n(n+1)/2}.
  const SequenceView f = q_power_sequence(8);
  EXPECT_TRUE(all_zero(op_apply(kL - scalar(q()), f)));
  EXPECT_FALSE(all_zero(op_apply(kL - scalar(q() * M()), f)));
  EXPECT_TRUE(all_zero(op_apply(kL - scalar(q() * M()), q_triangular_sequence(8))));
  EXPECT_EQ(op_apply(scalar(LaurentPoly(1L)), f), f);
  const SequenceView ones(6, RationalFn(1L));
  const SequenceView g = op_apply(scalar(M()), ones);
  ASSERT_EQ(g.size(), 6u);
  for (int n = 0; n < 6; ++n) EXPECT_EQ(g[static_cast<std::size_t>(n)], RationalFn(q(n)));
  EXPECT_EQ(op_apply(OreOperator::L(Algebra::kWt, 2), f).size(), 6u);
  EXPECT_THROW(op_apply(OreOperator::L(Algebra::kWt, 3), SequenceView(3, RationalFn(1L))), Error);
}

TEST(OreApply, CompatibleWithMultiplication) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const OreOperator x = random_op(rng, 2), y = random_op(rng, 2);
    const SequenceView f = random_sequence(rng, 6);
    EXPECT_EQ(op_apply(op_multiply(x, y), f), op_apply(x, op_apply(y, f)));
  }
}

TEST(ContentFree, Examples) {
  const OreOperator p = op({q() * (q() - 1) * q() * M(2), (q(2) - q()) * M()});
  EXPECT_EQ(content_free(p), kL + scalar(q() * M()));
  EXPECT_EQ(operator_content(p), (q(2) - q()) * M());
  EXPECT_EQ(content_free(kL + scalar(q() * M())), kL + scalar(q() * M()));
  // Sign: the leading coefficient's largest term becomes positive.
  EXPECT_EQ(content_free(op({LaurentPoly(3L), -a() * 3 + 6})), op({LaurentPoly(-1L), a() - 2}));
  EXPECT_THROW(content_free(OreOperator()), Error);
}

TEST(ContentFree, IdempotentAndRecoversFactor) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    const OreOperator p = random_op(rng, 2);
    const OreOperator c = content_free(p);
    EXPECT_EQ(content_free(c), c);
    EXPECT_EQ(op_multiply(scalar(operator_content(p)), c), p);
    const LaurentPoly k = random_nonneg_poly(rng, kVarsAQM, 2, 2);
    if (!k.is_zero()) EXPECT_EQ(content_free(op_multiply(scalar(k), p)), c);
  }
}

TEST(Specialize, Examples) {
  const OreOperator p = op({-q(), a() * M()});
  const Binding at2[] = {Binding::a_to_q_power(2)};
  const Binding q1[] = {Binding::set_one(Var::q)};
  const Binding both[] = {Binding::set_one(Var::a), Binding::set_one(Var::q)};
  const OreOperator s = op_specialize(p, at2);
  EXPECT_EQ(s.algebra(), Algebra::kW);
  EXPECT_EQ(s.coeffs(), (std::vector<LaurentPoly>{-q(), q(2) * M()}));
  const OreOperator c1 = op_specialize(s, q1);
  const OreOperator c2 = op_specialize(p, both);
  EXPECT_EQ(c1.algebra(), Algebra::kClassical);
  EXPECT_EQ(c1.coeffs(), (std::vector<LaurentPoly>{LaurentPoly(-1L), M()}));
  EXPECT_EQ(c1, c2);
  const Binding bad[] = {Binding::M_to_q_power(1)};
  EXPECT_THROW(op_specialize(p, bad), Error);
}

TEST(Specialize, DiagramCommutes) {
  std::mt19937_64 rng(5);
  const Binding q1[] = {Binding::set_one(Var::q)};
  const Binding both[] = {Binding::set_one(Var::a), Binding::set_one(Var::q)};
  for (int i = 0; i < 100; ++i) {
    const OreOperator p = random_op(rng, 2);
    const Binding atN[] = {Binding::a_to_q_power(1 + i % 5)};
    EXPECT_EQ(op_specialize(op_specialize(p, atN), q1), op_specialize(p, both));
  }
}

TEST(Specialize, ContentFreeCommutesUpToContent) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    const OreOperator p = random_op(rng, 2);
    const Binding atN[] = {Binding::a_to_q_power(2 + i % 3)};
    const OreOperator lhs = op_specialize(content_free(p), atN);
    const OreOperator rhs = op_specialize(p, atN);
    if (rhs.is_zero()) continue;
    EXPECT_EQ(content_free(lhs), content_free(rhs));
  }
}

TEST(Specialize, AnnihilatorSurvivesSpecialization) {
  const SequenceView f = unknot_table(8);
  const OreOperator p = unknot_operator();
  EXPECT_TRUE(all_zero(op_apply(p, f)));
  for (int N = 2; N <= 4; ++N) {
    const Binding atN[] = {Binding::a_to_q_power(N)};
    SequenceView g;
    for (const auto& x : f) g.push_back(specialize(x, atN));
    EXPECT_TRUE(all_zero(op_apply(op_specialize(p, atN), g))) << "N=" << N;
  }
}

TEST(RightGcd, Examples) {
  const OreOperator p = kL - scalar(q() * M());
  EXPECT_EQ(right_gcd(p, p), content_free(p));
  EXPECT_EQ(right_gcd(p, kL - scalar(M())), scalar(LaurentPoly(1L)));
  EXPECT_EQ(right_gcd(unknot_operator(), unknot_operator()), content_free(unknot_operator()));
}

TEST(RightGcd, RecoversCommonRightFactor) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 8; ++i) {
    const OreOperator p = random_op(rng, 1);
    if (p.order() < 1) continue;
    const OreOperator r = random_op(rng, 2), s = random_op(rng, 2);
    const OreOperator g = right_gcd(op_multiply(r, p), op_multiply(s, p));
    EXPECT_TRUE(right_divides(g, op_multiply(r, p)));
    EXPECT_TRUE(right_divides(g, op_multiply(s, p)));
    EXPECT_TRUE(right_divides(content_free(p), g));
    // Generic r, s share no right factor, so the gcd is p itself.
    EXPECT_EQ(g, content_free(p)) << r.to_string() << " | " << s.to_string();
  }
}

TEST(RightGcd, ClassicalAlgebraIsCommutative) {
  const Binding both[] = {Binding::set_one(Var::a), Binding::set_one(Var::q)};
  const OreOperator x = op_specialize(kL - scalar(M()), both);
  const OreOperator y = op_specialize(kL + scalar(M(2)), both);
  EXPECT_EQ(op_multiply(x, y), op_multiply(y, x));
  EXPECT_EQ(right_gcd(op_multiply(x, y), op_multiply(x, x)), x);
}
