#include "qholo/rational.hpp"

namespace qholo {

RationalFn::RationalFn(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero();
  reduce();
}

RationalFn RationalFn::from_canonical(LaurentPoly num, LaurentPoly den) {
  RationalFn r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

void RationalFn::canonicalize_monomial_den() {
  // den is a monomial unit; fold it into the numerator.
  const VarSet vars = num_.vars() | den_.vars();
  if (num_.is_zero()) {
    den_ = LaurentPoly(1L);
  } else {
    const auto& d = den_.leading_term();
    const Exponents e = LaurentPoly::unpack(d.key);
    num_ = num_.shifted({-e[0], -e[1], -e[2]});
    if (d.coef != 1) num_ = divide_exact(num_, LaurentPoly(d.coef));
    den_ = LaurentPoly(1L);
  }
  num_.declare(vars);
  den_.declare(vars);
}

void RationalFn::reduce() {
  const VarSet vars = num_.vars() | den_.vars();
  if (num_.is_zero()) {
    den_ = LaurentPoly(1L);
  } else if (den_.is_monomial()) {
    Integer g;
    const Integer& dc = den_.leading_term().coef;
    const Integer nc = num_.integer_content();
    mpz_gcd(g.get_mpz_t(), nc.get_mpz_t(), dc.get_mpz_t());
    if (sgn(dc) < 0) g = -g;
    const Exponents e = LaurentPoly::unpack(den_.leading_term().key);
    num_ = num_.shifted({-e[0], -e[1], -e[2]}).divided_by_integer(g);
    den_ = LaurentPoly(Integer(dc / g));
  } else {
    const LaurentPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
    // Move the monomial unit and sign of den into num.
    const Exponents m = den_.min_exponents();
    const Exponents neg{-m[0], -m[1], -m[2]};
    num_ = num_.shifted(neg);
    den_ = den_.shifted(neg);
    if (sgn(den_.leading_term().coef) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }
  num_.declare(vars);
  den_.declare(vars);
}

LaurentPoly RationalFn::as_polynomial() const {
  if (!den_.is_one()) throw NotDivisible("rational function " + to_string() + " is not a Laurent polynomial");
  return num_;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) {
    num_.declare(o.vars());
    return *this;
  }
  if (is_zero()) {
    const VarSet v = vars();
    *this = o;
    num_.declare(v);
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.is_one()) {
      if (num_.is_zero()) den_.declare(num_.vars());
      return *this;
    }
    reduce();
    return *this;
  }
  // Combine over lcm(den, o.den) to keep intermediate sizes small.
  const LaurentPoly g = gcd(den_, o.den_);
  const LaurentPoly dx = divide_exact(den_, g);
  const LaurentPoly dy = divide_exact(o.den_, g);
  num_ = num_ * dy + o.num_ * dx;
  den_ = den_ * dy;
  reduce();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (is_zero() || o.is_zero()) {
    const VarSet v = vars() | o.vars();
    *this = RationalFn();
    num_.declare(v);
    den_.declare(v);
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    den_.declare(o.vars());
    return *this;
  }
  // Cross-cancel before multiplying.
  const LaurentPoly g1 = gcd(num_, o.den_);
  const LaurentPoly g2 = gcd(o.num_, den_);
  LaurentPoly n = divide_exact(num_, g1) * divide_exact(o.num_, g2);
  LaurentPoly d = divide_exact(den_, g2) * divide_exact(o.den_, g1);
  const VarSet v = vars() | o.vars();
  num_ = std::move(n);
  den_ = std::move(d);
  const Exponents m = den_.min_exponents();
  const Exponents neg{-m[0], -m[1], -m[2]};
  num_ = num_.shifted(neg);
  den_ = den_.shifted(neg);
  if (sgn(den_.leading_term().coef) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  num_.declare(v);
  den_.declare(v);
  return *this;
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RationalFn(den_, num_);
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
  if (o.is_zero()) throw DivisionByZero();
  return *this *= o.inverse();
}

RationalFn RationalFn::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  RationalFn r = from_canonical(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
  // Powers of a canonical fraction stay canonical except for the sign rule.
  if (sgn(r.den_.leading_term().coef) < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RationalFn RationalFn::q_inverted() const { return RationalFn(num_.q_inverted(), den_.q_inverted()); }

std::string RationalFn::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFn specialize(const RationalFn& f, std::span<const Binding> bindings) {
  LaurentPoly n = specialize(f.num(), bindings);
  LaurentPoly d = specialize(f.den(), bindings);
  if (d.is_zero()) {
    throw SpecializationError(
        n.is_zero() ? "specialization produces 0/0" : "specialization hits a pole", f.den().to_string());
  }
  return RationalFn(n, d);
}

}  // namespace qholo
