#pragma once

// Sequence tables of colored invariants, recursion guessing and the checks around it.

#include <optional>
#include <string>
#include <vector>

#include "qholo/link.hpp"
#include "qholo/qweyl.hpp"

namespace qholo {

enum class Framing { kBlackboard, kZero };
const char* to_string(Framing f);

/// Colored invariant in the requested framing. Zero framing divides each component's value
/// by its framing factor to the power of its self-writhe: framing_factor(n_c) for columns,
/// the same with q -> 1/q for rows.
RationalFn framed_invariant(const ColoredBraid& b, const ColorSpec& spec, Framing framing,
                            Evaluator& ev = default_evaluator());

/// n -> X(a,q) for n = 0..n_max, where the axis component carries the column (1^n), or
/// the row (n), and every other component keeps its size from the braid in the same shape.
/// Column tables vanish at a = q^N once n > N; row tables do not.
struct SequenceTable {
  std::string id;
  ColoredBraid braid;
  int axis = 0;
  Framing framing = Framing::kZero;
  ComponentColor::Kind shape = ComponentColor::kColumn;
  std::vector<RationalFn> values;

  int n_max() const { return static_cast<int>(values.size()) - 1; }
};

struct TableOptions {
  Framing framing = Framing::kZero;
  ComponentColor::Kind shape = ComponentColor::kColumn;
  std::string id;
  int threads = 0;  // 0: hardware concurrency
};

/// Values as in framed_invariant, computed in parallel over n.
SequenceTable build_table(const ColoredBraid& b, int axis, int n_max, const TableOptions& opts = {});

/// Entries 0..n_max of a table, substituted a -> q^N.
SequenceView specialize_table(const SequenceTable& t, int N);

/// Unknowns are the coefficients of a^i q^k M^m (0 <= i <= a_deg, ...) in each of the
/// d+1 coefficients of L^0..L^d.
struct RecursionAnsatz {
  int order = 1;
  int m_deg = 1;
  int a_deg = 1;
  int q_deg = 1;

  long unknowns() const {
    return static_cast<long>(order + 1) * (m_deg + 1) * (a_deg + 1) * (q_deg + 1);
  }
  std::string to_string() const;
};

/// The table is too short for the ansatz; required_n_max() is an estimate of what would do.
class InsufficientData : public Error {
 public:
  InsufficientData(const std::string& what, int required) : Error(what), required_(required) {}
  int required_n_max() const noexcept { return required_; }

 private:
  int required_;
};

struct GuessReport {
  std::vector<int> fit_indices;       // n whose equations were solved
  std::vector<int> held_out;          // n checked afterwards, never used for fitting
  long unknowns = 0;
  long equations = 0;
  int rank = 0;
  int kernel_dim = 0;
};

/// Number of trailing usable indices kept back from fitting.
inline constexpr int kHeldOut = 2;

/// Fits the ansatz on all but the last kHeldOut usable indices and returns the content-free
/// right gcd of the kernel, provided it annihilates the held-out indices. nullopt means the
/// kernel is trivial. Throws InsufficientData when the fit is underdetermined.
std::optional<OreOperator> guess_recursion(const SequenceTable& t, const RecursionAnsatz& ansatz,
                                           GuessReport* report = nullptr);

struct SearchLimits {
  int max_order = 2;
  int max_m_deg = 6;
  int max_bound = 8;  // cap on the a- and q-bounds
};

struct SearchResult {
  std::optional<OreOperator> op;
  RecursionAnsatz ansatz;                  // the successful one
  std::vector<RecursionAnsatz> exhausted;  // smaller ansätze that returned nothing
  std::optional<InsufficientData> stopped; // the search hit a table that was too short
  GuessReport report;
};

/// Tries ansätze in lexicographic order of (order, m_deg, bound) with a_deg = q_deg = bound
/// and returns the first success, so minimality holds relative to this search only.
SearchResult search_recursion(const SequenceTable& t, const SearchLimits& limits = {});

struct VerifyReport {
  bool pass = true;
  int first_failing = -1;      // index n of the first nonzero residual
  int checked = 0;             // residuals computed: n = 0..checked-1
  std::vector<int> held_out;   // the indices never used for fitting
};

/// op_apply on the whole table; `fitted_through` marks the last index used for fitting.
VerifyReport verify_recursion(const OreOperator& p, const SequenceTable& t, int fitted_through = -1);

struct SpecializationReport {
  struct PerN {
    int N = 0;
    bool annihilates = true;
    int first_failing = -1;
    OreOperator classical;  // the operator at a = q^N, then q = 1
  };
  std::vector<PerN> per_N;
  OreOperator classical;        // at a = 1, q = 1
  bool classical_agree = true;  // every per-N q=1 image equals `classical`
  bool pass = true;
};

SpecializationReport specialization_suite(const OreOperator& p, const SequenceTable& t, const std::vector<int>& Ns);

/// A bivariate integer polynomial sum coef M^e_M L^e_L.
struct APolyTerm {
  Integer coef;
  int e_M = 0;
  int e_L = 0;
};
/// Parses [{"coef": 1, "e_M": 0, "e_L": 1}, ...]; coef may be a number or a decimal string.
std::vector<APolyTerm> parse_apoly(const std::string& json_text);

struct ConjectureReport {
  static constexpr const char* kLabel = "experiment — conjecture, not a theorem";
  /// P(1,1,M,L) and the supplied polynomial, both with L written as the variable a.
  LaurentPoly classical;
  LaurentPoly supplied;
  bool divides = false;
  std::optional<LaurentPoly> quotient;  // b(M), when the division is exact and L-free
  std::string finding;
};

ConjectureReport conjecture_report(const OreOperator& p, const std::vector<APolyTerm>& apoly);

}  // namespace qholo
