#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qholo/errors.hpp"

namespace qholo {

using Integer = mpz_class;

/// The three symbols of the coefficient rings. Lexicographic order is a > q > M.
enum class Var : int { a = 0, q = 1, M = 2 };
inline constexpr int kNumVars = 3;

using Exponents = std::array<int, kNumVars>;

/// Bit set of variables, bit i set means Var(i) is declared.
using VarSet = std::uint8_t;
inline constexpr VarSet var_bit(Var v) { return static_cast<VarSet>(1u << static_cast<int>(v)); }
inline constexpr VarSet kVarsA = var_bit(Var::a);
inline constexpr VarSet kVarsQ = var_bit(Var::q);
inline constexpr VarSet kVarsM = var_bit(Var::M);
inline constexpr VarSet kVarsAQ = kVarsA | kVarsQ;
inline constexpr VarSet kVarsAQM = kVarsA | kVarsQ | kVarsM;

char var_name(Var v);

/// Sparse Laurent polynomial in a, q, M with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by packed exponent key (lexicographic in a, q, M) with no zero
/// coefficients, so equality is structural. `vars()` records the declared symbol list;
/// arithmetic takes the union of declarations.
class LaurentPoly {
 public:
  using Key = std::uint64_t;
  struct Term {
    Key key;
    Integer coef;
  };

  static constexpr int kFieldBits = 21;
  static constexpr int kBias = 1 << 20;
  static constexpr Key kFieldMask = (Key{1} << kFieldBits) - 1;
  static constexpr Key kZeroKey =
      (Key(kBias) << (2 * kFieldBits)) | (Key(kBias) << kFieldBits) | Key(kBias);

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor): integers embed as constants
  LaurentPoly(const Integer& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Integer& c, const Exponents& e, VarSet vars = 0);
  static LaurentPoly variable(Var v, int power = 1);
  /// Builds from unsorted terms; duplicates are combined and zeros dropped.
  static LaurentPoly from_terms(std::vector<Term> terms, VarSet vars);

  static Key pack(const Exponents& e);
  static Exponents unpack(Key k);
  static int exponent(Key k, Var v) {
    const int shift = (2 - static_cast<int>(v)) * kFieldBits;
    return static_cast<int>((k >> shift) & kFieldMask) - kBias;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  VarSet vars() const { return vars_; }
  LaurentPoly& declare(VarSet vars) {
    vars_ |= vars;
    return *this;
  }
  /// Variables that actually occur with a nonzero exponent.
  VarSet support() const;
  bool depends_on(Var v) const;

  int min_degree(Var v) const;
  int max_degree(Var v) const;
  Exponents min_exponents() const;

  /// Lexicographically largest term.
  const Term& leading_term() const { return terms_.back(); }
  const Term& trailing_term() const { return terms_.front(); }
  Integer coefficient(const Exponents& e) const;
  Integer constant_term() const { return coefficient({0, 0, 0}); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
  friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);

  LaurentPoly pow(unsigned k) const;
  /// Multiplies every term by the monomial x^e.
  LaurentPoly shifted(const Exponents& e) const;
  LaurentPoly scaled(const Integer& c) const;
  /// Integer content (gcd of coefficients), always nonnegative.
  Integer integer_content() const;
  /// Divides all coefficients by an integer that must divide them.
  LaurentPoly divided_by_integer(const Integer& c) const;

  /// Substitutes q -> q^{-1} (used by rank-level duality).
  LaurentPoly q_inverted() const;

  friend bool operator==(const LaurentPoly& x, const LaurentPoly& y);
  friend bool operator!=(const LaurentPoly& x, const LaurentPoly& y) { return !(x == y); }
  /// Total order used for canonical sorting (not an algebraic order).
  friend bool operator<(const LaurentPoly& x, const LaurentPoly& y);

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Term> terms_;
  VarSet vars_ = 0;
};

/// Exact quotient p / d. Throws NotDivisible when d does not divide p, DivisionByZero for d = 0.
LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d);
/// Exact quotient, or nullopt when d does not divide p in Z[a^±, q^±, M^±].
std::optional<LaurentPoly> try_divide(const LaurentPoly& p, const LaurentPoly& d);

/// Greatest common divisor in Z[a^±1, q^±1, M^±1], normalized so the leading term is
/// positive and no monomial factor remains (monomials are units). gcd(0, 0) = 0.
LaurentPoly gcd(const LaurentPoly& x, const LaurentPoly& y);

/// Multiplies by the monomial that makes every minimum exponent zero and the leading
/// coefficient positive. Returns the unit that was divided out, as (sign, exponents).
LaurentPoly unit_normal(const LaurentPoly& p);

/// A substitution `var -> coeff * q^q_power`. For var = q, q_power must be 0.
struct Binding {
  Var var;
  Integer coeff = 1;
  int q_power = 0;

  static Binding a_to_q_power(int n) { return {Var::a, 1, n}; }
  static Binding set_one(Var v) { return {v, 1, 0}; }
  static Binding M_to_q_power(int n) { return {Var::M, 1, n}; }
};

/// Applies the bindings simultaneously.
LaurentPoly specialize(const LaurentPoly& p, std::span<const Binding> bindings);

}  // namespace qholo
