#include "qholo/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qholo {

char var_name(Var v) {
  switch (v) {
    case Var::a: return 'a';
    case Var::q: return 'q';
    case Var::M: return 'M';
  }
  return '?';
}

namespace {

constexpr Var kAllVars[kNumVars] = {Var::a, Var::q, Var::M};

// Product of two packed monomials. Valid while every exponent stays in (-2^20, 2^20).
inline LaurentPoly::Key key_mul(LaurentPoly::Key x, LaurentPoly::Key y) {
  return x + y - LaurentPoly::kZeroKey;
}
inline LaurentPoly::Key key_div(LaurentPoly::Key x, LaurentPoly::Key y) {
  return x - y + LaurentPoly::kZeroKey;
}

bool key_less(const LaurentPoly::Term& t, const LaurentPoly::Term& u) { return t.key < u.key; }

}  // namespace

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_.push_back({kZeroKey, Integer(c)});
}

LaurentPoly::LaurentPoly(const Integer& c) {
  if (sgn(c) != 0) terms_.push_back({kZeroKey, c});
}

LaurentPoly::Key LaurentPoly::pack(const Exponents& e) {
  Key k = 0;
  for (int i = 0; i < kNumVars; ++i) {
    if (e[i] <= -kBias || e[i] >= kBias) throw Error("exponent out of representable range");
    k = (k << kFieldBits) | Key(e[i] + kBias);
  }
  return k;
}

Exponents LaurentPoly::unpack(Key k) {
  return {exponent(k, Var::a), exponent(k, Var::q), exponent(k, Var::M)};
}

LaurentPoly LaurentPoly::monomial(const Integer& c, const Exponents& e, VarSet vars) {
  LaurentPoly p;
  for (int i = 0; i < kNumVars; ++i)
    if (e[i] != 0) vars |= var_bit(kAllVars[i]);
  p.vars_ = vars;
  if (sgn(c) != 0) p.terms_.push_back({pack(e), c});
  return p;
}

LaurentPoly LaurentPoly::variable(Var v, int power) {
  Exponents e{0, 0, 0};
  e[static_cast<int>(v)] = power;
  return monomial(1, e, var_bit(v));
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms, VarSet vars) {
  LaurentPoly p;
  p.terms_ = std::move(terms);
  p.vars_ = vars;
  p.normalize();
  return p;
}

void LaurentPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), key_less);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    Integer c = std::move(terms_[i].coef);
    while (j < terms_.size() && terms_[j].key == terms_[i].key) c += terms_[j++].coef;
    if (sgn(c) != 0) {
      terms_[out].key = terms_[i].key;
      terms_[out].coef = std::move(c);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
  vars_ |= support();
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].key == kZeroKey);
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].key == kZeroKey && terms_[0].coef == 1;
}

VarSet LaurentPoly::support() const {
  VarSet s = 0;
  for (const auto& t : terms_)
    for (Var v : kAllVars)
      if (exponent(t.key, v) != 0) s |= var_bit(v);
  return s;
}

bool LaurentPoly::depends_on(Var v) const { return (support() & var_bit(v)) != 0; }

int LaurentPoly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  if (v == Var::a) return exponent(terms_.front().key, v);
  int m = exponent(terms_.front().key, v);
  for (const auto& t : terms_) m = std::min(m, exponent(t.key, v));
  return m;
}

int LaurentPoly::max_degree(Var v) const {
  if (terms_.empty()) return 0;
  if (v == Var::a) return exponent(terms_.back().key, v);
  int m = exponent(terms_.front().key, v);
  for (const auto& t : terms_) m = std::max(m, exponent(t.key, v));
  return m;
}

Exponents LaurentPoly::min_exponents() const {
  return {min_degree(Var::a), min_degree(Var::q), min_degree(Var::M)};
}

Integer LaurentPoly::coefficient(const Exponents& e) const {
  const Key k = pack(e);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{k, 0}, key_less);
  if (it != terms_.end() && it->key == k) return it->coef;
  return 0;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

// Merges two sorted term lists; sign = +1 adds, -1 subtracts.
std::vector<LaurentPoly::Term> merge_terms(const std::vector<LaurentPoly::Term>& x,
                                           const std::vector<LaurentPoly::Term>& y, int sign) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].key < y[j].key)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].key < x[i].key) {
      out.push_back({y[j].key, sign > 0 ? y[j].coef : Integer(-y[j].coef)});
      ++j;
    } else {
      Integer c = sign > 0 ? Integer(x[i].coef + y[j].coef) : Integer(x[i].coef - y[j].coef);
      if (sgn(c) != 0) out.push_back({x[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  vars_ |= o.vars_;
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, +1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  vars_ |= o.vars_;
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
  LaurentPoly r;
  r.vars_ = x.vars_ | y.vars_;
  if (x.terms_.empty() || y.terms_.empty()) return r;
  const LaurentPoly& s = x.terms_.size() <= y.terms_.size() ? x : y;
  const LaurentPoly& l = x.terms_.size() <= y.terms_.size() ? y : x;
  if (s.terms_.size() == 1) {
    // Monomial times polynomial keeps the order, no sorting needed.
    r.terms_.reserve(l.terms_.size());
    for (const auto& t : l.terms_) r.terms_.push_back({key_mul(t.key, s.terms_[0].key), t.coef * s.terms_[0].coef});
    return r;
  }
  std::vector<LaurentPoly::Term> acc;
  acc.reserve(s.terms_.size() * l.terms_.size());
  for (const auto& t : s.terms_)
    for (const auto& u : l.terms_) acc.push_back({key_mul(t.key, u.key), t.coef * u.coef});
  r.terms_ = std::move(acc);
  r.normalize();
  r.vars_ |= x.vars_ | y.vars_;
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly result(1L);
  result.vars_ = vars_;
  LaurentPoly base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(const Exponents& e) const {
  LaurentPoly r = *this;
  const Key s = pack(e);
  for (auto& t : r.terms_) t.key = key_mul(t.key, s);
  for (int i = 0; i < kNumVars; ++i)
    if (e[i] != 0) r.vars_ |= var_bit(kAllVars[i]);
  return r;
}

LaurentPoly LaurentPoly::scaled(const Integer& c) const {
  if (sgn(c) == 0) {
    LaurentPoly z;
    z.vars_ = vars_;
    return z;
  }
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Integer LaurentPoly::integer_content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::divided_by_integer(const Integer& c) const {
  if (sgn(c) == 0) throw DivisionByZero();
  LaurentPoly r = *this;
  for (auto& t : r.terms_) {
    if (!mpz_divisible_p(t.coef.get_mpz_t(), c.get_mpz_t())) throw NotDivisible("integer content does not divide");
    mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

LaurentPoly LaurentPoly::q_inverted() const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e = unpack(t.key);
    e[1] = -e[1];
    ts.push_back({pack(e), t.coef});
  }
  return from_terms(std::move(ts), vars_);
}

bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i)
    if (x.terms_[i].key != y.terms_[i].key || x.terms_[i].coef != y.terms_[i].coef) return false;
  return true;
}

bool operator<(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.terms_.size() != y.terms_.size()) return x.terms_.size() < y.terms_.size();
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].key != y.terms_[i].key) return x.terms_[i].key < y.terms_[i].key;
    const int c = cmp(x.terms_[i].coef, y.terms_[i].coef);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest term first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponents e = unpack(it->key);
    const bool is_const = e == Exponents{0, 0, 0};
    Integer c = it->coef;
    if (sgn(c) < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    bool wrote = false;
    if (c != 1 || is_const) {
      os << c.get_str();
      wrote = true;
    }
    for (int i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << var_name(kAllVars[i]);
      if (e[i] != 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact division.
//
// Lexicographic order on exponent vectors is a group order, so a quotient c with
// p = c*d satisfies lt(c) = lt(p)/lt(d). Every term of c also lies in the box
// [min_v(p) - min_v(d), max_v(p) - max_v(d)] for each variable; leaving the box
// certifies non-divisibility and bounds the loop.

std::optional<LaurentPoly> try_divide(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw DivisionByZero();
  LaurentPoly zero;
  zero.declare(p.vars() | d.vars());
  if (p.is_zero()) return zero;

  const auto& dt = d.terms();
  if (dt.size() == 1) {
    std::vector<LaurentPoly::Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!mpz_divisible_p(t.coef.get_mpz_t(), dt[0].coef.get_mpz_t())) return std::nullopt;
      Integer c;
      mpz_divexact(c.get_mpz_t(), t.coef.get_mpz_t(), dt[0].coef.get_mpz_t());
      out.push_back({key_div(t.key, dt[0].key), std::move(c)});
    }
    return LaurentPoly::from_terms(std::move(out), p.vars() | d.vars());
  }

  int lo[kNumVars], hi[kNumVars];
  for (int i = 0; i < kNumVars; ++i) {
    lo[i] = p.min_degree(kAllVars[i]) - d.min_degree(kAllVars[i]);
    hi[i] = p.max_degree(kAllVars[i]) - d.max_degree(kAllVars[i]);
    if (lo[i] > hi[i]) return std::nullopt;
  }

  std::map<LaurentPoly::Key, Integer> rem;
  for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.key, t.coef);

  const auto& lead = dt.back();
  std::vector<LaurentPoly::Term> quot;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    const LaurentPoly::Key qk = key_div(top->first, lead.key);
    for (int i = 0; i < kNumVars; ++i) {
      const int e = LaurentPoly::exponent(qk, kAllVars[i]);
      if (e < lo[i] || e > hi[i]) return std::nullopt;
    }
    if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coef.get_mpz_t())) return std::nullopt;
    Integer qc;
    mpz_divexact(qc.get_mpz_t(), top->second.get_mpz_t(), lead.coef.get_mpz_t());
    rem.erase(top);
    // Subtract qc * x^qk * (d - lead).
    for (std::size_t i = 0; i + 1 < dt.size(); ++i) {
      const LaurentPoly::Key k = key_mul(qk, dt[i].key);
      auto [it, inserted] = rem.try_emplace(k);
      it->second -= qc * dt[i].coef;
      if (sgn(it->second) == 0) rem.erase(it);
    }
    quot.push_back({qk, std::move(qc)});
  }
  std::reverse(quot.begin(), quot.end());
  return LaurentPoly::from_terms(std::move(quot), p.vars() | d.vars());
}

LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  auto r = try_divide(p, d);
  if (!r) throw NotDivisible("polynomial " + d.to_string() + " does not divide " + p.to_string());
  return *std::move(r);
}

LaurentPoly unit_normal(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  const Exponents m = p.min_exponents();
  LaurentPoly r = p.shifted({-m[0], -m[1], -m[2]});
  if (sgn(r.leading_term().coef) < 0) r = -r;
  return r;
}

// ---------------------------------------------------------------------------
// Multivariate gcd by recursive primitive polynomial remainder sequences.

namespace {

using Coeffs = std::vector<LaurentPoly>;  // index = degree in the main variable

// Splits a polynomial with nonnegative exponents in v into coefficients of v^k.
Coeffs split_by(const LaurentPoly& p, Var v) {
  const int vi = static_cast<int>(v);
  Coeffs out(static_cast<std::size_t>(p.max_degree(v)) + 1);
  std::vector<std::vector<LaurentPoly::Term>> buckets(out.size());
  for (const auto& t : p.terms()) {
    Exponents e = LaurentPoly::unpack(t.key);
    const int k = e[vi];
    e[vi] = 0;
    buckets[static_cast<std::size_t>(k)].push_back({LaurentPoly::pack(e), t.coef});
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = LaurentPoly::from_terms(std::move(buckets[k]), p.vars());
  return out;
}

LaurentPoly join_by(const Coeffs& c, Var v, VarSet vars) {
  LaurentPoly r;
  r.declare(vars);
  Exponents e{0, 0, 0};
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    e[static_cast<int>(v)] = static_cast<int>(k);
    r += c[k].shifted(e);
  }
  return r;
}

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

LaurentPoly gcd_normalized(const LaurentPoly& x, const LaurentPoly& y);

LaurentPoly content_of(const Coeffs& c) {
  LaurentPoly g;
  for (const auto& k : c) {
    if (k.is_zero()) continue;
    g = g.is_zero() ? unit_normal(k) : gcd_normalized(g, k);
    if (g.is_one()) break;
  }
  return g;
}

Coeffs divide_coeffs(const Coeffs& c, const LaurentPoly& g) {
  Coeffs out;
  out.reserve(c.size());
  for (const auto& k : c) out.push_back(divide_exact(k, g));
  return out;
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b (both nonempty, trimmed).
Coeffs pseudo_rem(Coeffs a, const Coeffs& b) {
  const LaurentPoly& lb = b.back();
  int pending = static_cast<int>(a.size()) - static_cast<int>(b.size()) + 1;
  while (!a.empty() && a.size() >= b.size()) {
    const LaurentPoly la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& k : a) k *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    --pending;
    trim(a);
  }
  if (pending > 0 && !a.empty()) {
    const LaurentPoly f = lb.pow(static_cast<unsigned>(pending));
    for (auto& k : a) k *= f;
  }
  return a;
}

// x, y: nonzero, nonnegative exponents, no monomial factor.
LaurentPoly gcd_normalized(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_constant() || y.is_constant()) {
    const Integer cx = x.integer_content(), cy = y.integer_content();
    Integer g;
    mpz_gcd(g.get_mpz_t(), cx.get_mpz_t(), cy.get_mpz_t());
    return LaurentPoly(g).declare(x.vars() | y.vars());
  }
  if (x == y) return x;
  // Cheap exits: one side divides the other.
  if (x.size() <= y.size()) {
    if (try_divide(y, x)) return x;
  } else if (try_divide(x, y)) {
    return y;
  }

  const VarSet sx = x.support(), sy = y.support();
  Var v = Var::a;
  for (Var c : kAllVars)
    if ((sx | sy) & var_bit(c)) {
      v = c;
      break;
    }
  const VarSet vars = x.vars() | y.vars();
  if (!(sx & var_bit(v))) return gcd_normalized(x, unit_normal(content_of(split_by(y, v))));
  if (!(sy & var_bit(v))) return gcd_normalized(unit_normal(content_of(split_by(x, v))), y);

  Coeffs cx = split_by(x, v), cy = split_by(y, v);
  const LaurentPoly kx = content_of(cx), ky = content_of(cy);
  const LaurentPoly kg = gcd_normalized(kx, ky);
  cx = divide_coeffs(cx, kx);
  cy = divide_coeffs(cy, ky);
  if (cx.size() < cy.size()) std::swap(cx, cy);

  // Subresultant remainder sequence: every division below is exact, and coefficients grow
  // only polynomially, so no content has to be removed until the end.
  LaurentPoly g(1L), h(1L);
  while (true) {
    const unsigned delta = static_cast<unsigned>(cx.size() - cy.size());
    Coeffs r = pseudo_rem(cx, cy);
    if (r.empty()) break;
    if (r.size() == 1) {
      cy = {LaurentPoly(1L)};
      break;
    }
    r = divide_coeffs(r, g * h.pow(delta));
    cx = std::move(cy);
    cy = std::move(r);
    g = cx.back();
    if (delta == 0) continue;
    h = delta == 1 ? g : divide_exact(g.pow(delta), h.pow(delta - 1));
  }
  if (cy.size() > 1) cy = divide_coeffs(cy, content_of(cy));
  LaurentPoly res = unit_normal(join_by(cy, v, vars));
  if (!kg.is_one()) res = unit_normal(res * kg);
  return res.declare(vars);
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& x, const LaurentPoly& y) {
  if (x.is_zero()) return unit_normal(y);
  if (y.is_zero()) return unit_normal(x);
  return gcd_normalized(unit_normal(x), unit_normal(y)).declare(x.vars() | y.vars());
}

// ---------------------------------------------------------------------------

LaurentPoly specialize(const LaurentPoly& p, std::span<const Binding> bindings) {
  struct Sub {
    bool bound = false;
    int sign = 1;
    int q_power = 0;
  };
  Sub sub[kNumVars];
  VarSet removed = 0;
  for (const auto& b : bindings) {
    if (b.coeff != 1 && b.coeff != -1)
      throw Error("specialization coefficients must be units (+1 or -1) to stay in the Laurent ring");
    if (b.var == Var::q && b.q_power != 0) throw Error("q can only be specialized to a constant");
    auto& s = sub[static_cast<int>(b.var)];
    s.bound = true;
    s.sign = b.coeff == 1 ? 1 : -1;
    s.q_power = b.q_power;
    removed |= var_bit(b.var);
  }
  // q bound to a constant cannot be combined with a -> q^N in one pass.
  const bool q_bound = sub[1].bound;
  std::vector<LaurentPoly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Exponents e = LaurentPoly::unpack(t.key);
    Exponents ne = e;
    int sign = 1;
    int extra_q = 0;
    for (int i = 0; i < kNumVars; ++i) {
      if (!sub[i].bound || i == 1) continue;
      if (sub[i].sign < 0 && (e[i] & 1)) sign = -sign;
      extra_q += sub[i].q_power * e[i];
      ne[i] = 0;
    }
    ne[1] += extra_q;
    if (q_bound) {
      if (sub[1].sign < 0 && (ne[1] & 1)) sign = -sign;
      ne[1] = 0;
    }
    out.push_back({LaurentPoly::pack(ne), sign > 0 ? t.coef : Integer(-t.coef)});
  }
  VarSet vars = p.vars() & static_cast<VarSet>(~removed);
  for (int i = 0; i < kNumVars; ++i)
    if (sub[i].bound && i != 1 && sub[i].q_power != 0 && !q_bound) vars |= kVarsQ;
  return LaurentPoly::from_terms(std::move(out), vars);
}

}  // namespace qholo
