#pragma once

// Fractions whose denominators are products of cyclotomic polynomials in q.
//
// Every coefficient produced by the web relations has a denominator dividing a product
// of factors q^i - q^-i, so symbolic evaluation can add and multiply without computing a
// single multivariate gcd. Reduction is trial division by the recorded cyclotomic factors,
// which are irreducible, so a reduced value converts straight into a canonical RationalFn.

#include <map>

#include "qholo/rational.hpp"

namespace qholo::detail {

/// Phi_d(q) as a polynomial in q (d >= 1). Cached.
const LaurentPoly& cyclotomic(int d);

class CycloFrac {
 public:
  CycloFrac() = default;
  explicit CycloFrac(LaurentPoly num) : num_(std::move(num)) {}

  static CycloFrac zero() { return CycloFrac(); }
  static CycloFrac one() { return CycloFrac(LaurentPoly(1L)); }
  /// 1 / (q^i - q^-i)
  static CycloFrac inverse_q_diff(int i);

  bool is_zero() const { return num_.is_zero(); }
  const LaurentPoly& num() const { return num_; }
  const std::map<int, int>& den() const { return den_; }

  CycloFrac& operator*=(const CycloFrac& o);
  CycloFrac& operator*=(const LaurentPoly& p);
  CycloFrac& operator+=(const CycloFrac& o);
  friend CycloFrac operator*(CycloFrac x, const CycloFrac& y) { return x *= y; }
  friend CycloFrac operator+(CycloFrac x, const CycloFrac& y) { return x += y; }

  /// Cancels every cyclotomic factor that divides the numerator.
  void reduce();
  /// Reduced value as a canonical RationalFn.
  RationalFn to_rational() const;

 private:
  LaurentPoly num_;
  std::map<int, int> den_;  // d -> multiplicity of Phi_d(q)
};

}  // namespace qholo::detail
