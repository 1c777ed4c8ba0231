#include "qholo/qweyl.hpp"

#include <sstream>

namespace qholo {

const char* to_string(Algebra alg) {
  switch (alg) {
    case Algebra::kWt: return "Wt";
    case Algebra::kW: return "W";
    case Algebra::kClassical: return "classical";
  }
  return "?";
}

namespace {

void trim(std::vector<LaurentPoly>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// b(M) -> b(q^k M).
LaurentPoly shift_M(const LaurentPoly& p, int k) {
  if (k == 0) return p;
  std::vector<LaurentPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Exponents e = LaurentPoly::unpack(t.key);
    e[1] += k * e[2];
    out.push_back({LaurentPoly::pack(e), t.coef});
  }
  return LaurentPoly::from_terms(std::move(out), p.vars() | (p.depends_on(Var::M) ? kVarsQ : 0));
}

void require_same(const OreOperator& p, const OreOperator& q) {
  if (p.algebra() != q.algebra())
    throw Error(std::string("operators live in different algebras (") + to_string(p.algebra()) + " vs " +
                to_string(q.algebra()) + ")");
}

}  // namespace

OreOperator::OreOperator(Algebra alg, std::vector<LaurentPoly> coeffs) : alg_(alg), coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

OreOperator OreOperator::L(Algebra alg, int power) {
  std::vector<LaurentPoly> c(static_cast<std::size_t>(power) + 1, LaurentPoly(0L));
  c.back() = LaurentPoly(1L);
  return OreOperator(alg, std::move(c));
}

OreOperator OreOperator::scalar(Algebra alg, const LaurentPoly& c) { return OreOperator(alg, {c}); }

OreOperator OreOperator::operator+(const OreOperator& o) const {
  require_same(*this, o);
  std::vector<LaurentPoly> c = coeffs_;
  if (c.size() < o.coeffs_.size()) c.resize(o.coeffs_.size(), LaurentPoly(0L));
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[j] += o.coeffs_[j];
  return OreOperator(alg_, std::move(c));
}

OreOperator OreOperator::operator-() const {
  std::vector<LaurentPoly> c;
  for (const auto& x : coeffs_) c.push_back(-x);
  return OreOperator(alg_, std::move(c));
}

OreOperator OreOperator::operator-(const OreOperator& o) const { return *this + (-o); }

std::string OreOperator::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = order(); j >= 0; --j) {
    const LaurentPoly& c = coeff(j);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool bare = j > 0 && c.is_one();
    if (!bare) os << "(" << c.to_string() << ")";
    if (j > 0) os << (bare ? "" : "*") << "L" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  return os.str();
}

OreOperator op_multiply(const OreOperator& p, const OreOperator& q) {
  require_same(p, q);
  if (p.is_zero() || q.is_zero()) return OreOperator(p.algebra(), {});
  const bool commute = p.algebra() == Algebra::kClassical;
  std::vector<LaurentPoly> out(static_cast<std::size_t>(p.order() + q.order() + 1), LaurentPoly(0L));
  for (int i = 0; i <= p.order(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    for (int j = 0; j <= q.order(); ++j) {
      if (q.coeff(j).is_zero()) continue;
      out[static_cast<std::size_t>(i + j)] += p.coeff(i) * (commute ? q.coeff(j) : shift_M(q.coeff(j), i));
    }
  }
  return OreOperator(p.algebra(), std::move(out));
}

SequenceView op_apply(const OreOperator& p, const SequenceView& f) {
  if (p.is_zero()) return SequenceView(f.size(), RationalFn(0L));
  const int d = p.order();
  if (static_cast<int>(f.size()) < d + 1)
    throw Error("sequence has " + std::to_string(f.size()) + " entries; an order-" + std::to_string(d) +
                " operator needs at least " + std::to_string(d + 1));
  const bool classical = p.algebra() == Algebra::kClassical;
  SequenceView out;
  out.reserve(f.size() - static_cast<std::size_t>(d));
  for (int n = 0; n + d < static_cast<int>(f.size()); ++n) {
    // In the classical algebra M acts by 1 (q = 1).
    const Binding bind[] = {Binding::M_to_q_power(classical ? 0 : n)};
    RationalFn s(0L);
    for (int j = 0; j <= d; ++j) {
      if (p.coeff(j).is_zero()) continue;
      s += RationalFn(specialize(p.coeff(j), bind)) * f[static_cast<std::size_t>(n + j)];
    }
    out.push_back(std::move(s));
  }
  return out;
}

LaurentPoly operator_content(const OreOperator& p) {
  if (p.is_zero()) throw Error("content of the zero operator");
  LaurentPoly g;
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? unit_normal(c) : gcd(g, c);
  }
  // gcd works up to monomials; put back the common monomial factor.
  Exponents lo{0, 0, 0};
  bool first = true;
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) continue;
    const Exponents m = divide_exact(c, g).min_exponents();
    for (int i = 0; i < 3; ++i) lo[i] = first ? m[static_cast<std::size_t>(i)] : std::min(lo[i], m[static_cast<std::size_t>(i)]);
    first = false;
  }
  g = g.shifted(lo);
  if (sgn(divide_exact(p.leading(), g).leading_term().coef) < 0) g = -g;
  return g.declare(p.leading().vars());
}

OreOperator content_free(const OreOperator& p) {
  const LaurentPoly g = operator_content(p);
  std::vector<LaurentPoly> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(divide_exact(x, g));
  return OreOperator(p.algebra(), std::move(c));
}

OreOperator op_specialize(const OreOperator& p, std::span<const Binding> bindings) {
  Algebra alg = p.algebra();
  for (const auto& b : bindings) {
    if (b.var == Var::M) throw Error("M cannot be specialized inside an operator");
    if (b.var == Var::q) {
      if (b.q_power != 0 || b.coeff != 1) throw Error("q may only be specialized to 1");
      alg = Algebra::kClassical;
    }
    if (b.var == Var::a && alg == Algebra::kWt) alg = Algebra::kW;
  }
  std::vector<LaurentPoly> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(specialize(x, bindings));
  return OreOperator(alg, std::move(c));
}

// ---------------------------------------------------------------------------
// Euclidean algorithm in the localized algebra, kept fraction-free: each step left-multiplies
// by a shifted leading coefficient (a unit of the localization) and then strips the content,
// so the remainder sequence stays in Z[a,q,M]<L> with controlled growth.

namespace {

// Primitive pseudo-remainder of right division of a by b.
OreOperator right_pseudo_remainder(OreOperator a, const OreOperator& b) {
  const bool commute = a.algebra() == Algebra::kClassical;
  const int db = b.order();
  while (!a.is_zero() && a.order() >= db) {
    const int k = a.order() - db;
    const LaurentPoly lb = commute ? b.leading() : shift_M(b.leading(), k);
    const LaurentPoly la = a.leading();
    std::vector<LaurentPoly> c = a.coeffs();
    for (auto& x : c) x *= lb;
    for (int i = 0; i <= db; ++i)
      c[static_cast<std::size_t>(i + k)] -= la * (commute ? b.coeff(i) : shift_M(b.coeff(i), k));
    c.pop_back();
    a = OreOperator(a.algebra(), std::move(c));
    if (!a.is_zero()) a = content_free(a);
  }
  return a;
}

}  // namespace

OreOperator right_gcd(const OreOperator& p, const OreOperator& q) {
  require_same(p, q);
  if (p.is_zero() || q.is_zero()) throw Error("right_gcd needs nonzero operators");
  OreOperator a = content_free(p), b = content_free(q);
  if (a.order() < b.order()) std::swap(a, b);
  while (!b.is_zero()) {
    OreOperator r = right_pseudo_remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  // An order-0 gcd is a unit of the localization.
  if (a.order() == 0) return OreOperator::scalar(a.algebra(), LaurentPoly(1L));
  return content_free(a);
}

bool right_divides(const OreOperator& q, const OreOperator& p) {
  require_same(p, q);
  if (q.is_zero()) throw Error("division by the zero operator");
  return right_pseudo_remainder(p, q).is_zero();
}

}  // namespace qholo
