#pragma once

#include <span>
#include <string>

#include "qholo/poly.hpp"

namespace qholo {

/// Reduced fraction of Laurent polynomials.
///
/// Canonical form: gcd(num, den) = 1, den has all minimum exponents zero and a positive
/// coefficient on its lexicographically largest term; zero is 0/1. Equal values therefore
/// compare equal structurally.
class RationalFn {
 public:
  RationalFn() : den_(1L) {}
  RationalFn(long c) : num_(c), den_(1L) {}                 // NOLINT(google-explicit-constructor)
  RationalFn(const Integer& c) : num_(c), den_(1L) {}       // NOLINT(google-explicit-constructor)
  RationalFn(LaurentPoly p) : num_(std::move(p)), den_(1L) {  // NOLINT(google-explicit-constructor)
    canonicalize_monomial_den();
  }
  RationalFn(const LaurentPoly& num, const LaurentPoly& den);

  /// Trusts that (num, den) is already canonical. Used by deserialization after checks.
  static RationalFn from_canonical(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  VarSet vars() const { return num_.vars() | den_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// The numerator when the denominator is 1; throws NotDivisible otherwise.
  LaurentPoly as_polynomial() const;

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn x, const RationalFn& y) { return x += y; }
  friend RationalFn operator-(RationalFn x, const RationalFn& y) { return x -= y; }
  friend RationalFn operator*(RationalFn x, const RationalFn& y) { return x *= y; }
  friend RationalFn operator/(RationalFn x, const RationalFn& y) { return x /= y; }

  /// k may be negative (inverse power) when the value is nonzero.
  RationalFn pow(int k) const;
  RationalFn inverse() const;
  RationalFn q_inverted() const;

  friend bool operator==(const RationalFn& x, const RationalFn& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const RationalFn& x, const RationalFn& y) { return !(x == y); }

  std::string to_string() const;

 private:
  void canonicalize_monomial_den();
  void reduce();
  LaurentPoly num_;
  LaurentPoly den_;
};

/// Substitution into numerator and denominator. Throws SpecializationError when the
/// denominator vanishes.
RationalFn specialize(const RationalFn& f, std::span<const Binding> bindings);

}  // namespace qholo
