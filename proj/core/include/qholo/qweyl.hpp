#pragma once

#include <span>
#include <string>
#include <vector>

#include "qholo/rational.hpp"

namespace qholo {

/// Which coefficient ring an operator lives over. kWt is Z[a,q,M]<L>, kW is Z[q,M]<L>
/// (a specialized away), kClassical is the commutative ring Z[M,L] reached by q -> 1.
enum class Algebra { kWt, kW, kClassical };
const char* to_string(Algebra alg);

/// Element sum_j a_j(a,q,M) L^j of the q-Weyl algebra with L M = q M L. Coefficients sit
/// left of the powers of L. The zero operator has no coefficients and order -1.
class OreOperator {
 public:
  OreOperator() = default;
  /// Trailing zero coefficients are dropped.
  OreOperator(Algebra alg, std::vector<LaurentPoly> coeffs);

  static OreOperator L(Algebra alg = Algebra::kWt, int power = 1);
  static OreOperator scalar(Algebra alg, const LaurentPoly& c);

  Algebra algebra() const { return alg_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<LaurentPoly>& coeffs() const { return coeffs_; }
  const LaurentPoly& coeff(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  const LaurentPoly& leading() const { return coeffs_.back(); }

  friend bool operator==(const OreOperator& x, const OreOperator& y) {
    return x.alg_ == y.alg_ && x.coeffs_ == y.coeffs_;
  }

  OreOperator operator+(const OreOperator& o) const;
  OreOperator operator-(const OreOperator& o) const;
  OreOperator operator-() const;

  std::string to_string() const;

 private:
  Algebra alg_ = Algebra::kWt;
  std::vector<LaurentPoly> coeffs_;
};

/// Normal-ordered product P*Q using L^i b(M) = b(q^i M) L^i (commutative for kClassical).
/// Throws on mismatched algebras.
OreOperator op_multiply(const OreOperator& p, const OreOperator& q);

/// Values f_0..f_{n_max}.
using SequenceView = std::vector<RationalFn>;

/// (P f)_n = sum_j a_j(a, q, q^n) f_{n+j} for n = 0..n_max - d. Throws when the sequence is
/// shorter than d + 1 entries.
SequenceView op_apply(const OreOperator& p, const SequenceView& f);

/// Divides out the gcd of all coefficients in Z[a,q,M], monomials included, and fixes the
/// sign so the leading coefficient's largest term is positive. Throws on the zero operator.
OreOperator content_free(const OreOperator& p);
/// The factor removed by content_free (p = content * content_free(p)).
LaurentPoly operator_content(const OreOperator& p);

/// Coefficientwise substitution. Binding a removes a (kWt -> kW); binding q to 1 lands in
/// kClassical. M may not be bound.
OreOperator op_specialize(const OreOperator& p, std::span<const Binding> bindings);

/// Right gcd in the localized algebra Q(a,q,M)<L>, by the right-division Euclidean
/// algorithm, returned as its content-free integral lift.
OreOperator right_gcd(const OreOperator& p, const OreOperator& q);

/// True when p = s*q for some s in the localized algebra (zero right-division remainder).
bool right_divides(const OreOperator& q, const OreOperator& p);

}  // namespace qholo
