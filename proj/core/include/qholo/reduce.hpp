#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qholo/rational.hpp"
#include "qholo/web.hpp"

namespace qholo {

/// Product of the elementary factors the web relations produce:
/// sign * q^q_power * prod [n choose k] * prod [N+s choose k].
struct Coefficient {
  int sign = 1;
  int q_power = 0;
  std::vector<std::pair<int, int>> q_binomials;  // (n, k)
  std::vector<std::pair<int, int>> n_binomials;  // (s, k) meaning [N+s choose k]

  Coefficient& operator*=(const Coefficient& o);
  bool is_one() const { return sign == 1 && q_power == 0 && q_binomials.empty() && n_binomials.empty(); }

  RationalFn symbolic() const;
  LaurentPoly at_N(int N) const;
  std::string to_string() const;
};

/// Formal linear combination of webs, merged by canonical code.
class WebCombination {
 public:
  struct Term {
    RationalFn coef;
    Web web;
  };

  void add(const RationalFn& coef, const Web& web);
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
  std::vector<std::string> codes_;
};

enum class Rule { kLoop, kDigonI, kDigonII, kRebracket, kSquareSwitch };
const char* to_string(Rule r);

/// One application of a local relation: w = sum_i coef_i * web_i.
struct LocalMove {
  Rule rule;
  std::vector<std::pair<Coefficient, Web>> terms;
};

/// Order in which matches are chosen. The default policy takes the first match of the
/// highest-priority class; a nonzero seed shuffles the candidates inside each class.
struct ReductionPolicy {
  std::uint64_t seed = 0;
};

class StuckError : public Error {
 public:
  StuckError(const std::string& code)
      : Error("no reducible pattern in web " + code), code_(code) {}
  const std::string& web_code() const noexcept { return code_; }

 private:
  std::string code_;
};

class StepLimitError : public Error {
 public:
  StepLimitError(const std::string& what, std::vector<std::string> trace)
      : Error(what), trace_(std::move(trace)) {}
  /// Canonical codes of the webs on the evaluation stack when the budget ran out.
  const std::vector<std::string>& trace() const noexcept { return trace_; }

 private:
  std::vector<std::string> trace_;
};

/// Finds and applies one local relation, or returns nullopt when none matches.
std::optional<LocalMove> find_move(const Web& w, const ReductionPolicy& policy = {});

/// Applies one local relation; throws StuckError when no pattern matches.
WebCombination reduce_step(const Web& w, const ReductionPolicy& policy = {});

/// Step budget: QHOLO_STEP_LIMIT if set, else 10^6.
long default_step_limit();

/// Memoized evaluator. The memo is keyed by canonical code and shared by every call on
/// the same instance; it is guarded by a mutex, so an instance may be used concurrently.
class Evaluator {
 public:
  struct Options {
    ReductionPolicy policy;
    long step_limit = 0;  // 0 means default_step_limit()
  };
  struct Stats {
    long steps = 0;
    long memo_hits = 0;
    std::size_t memo_size = 0;
  };

  Evaluator();
  explicit Evaluator(Options opts);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  RationalFn symbolic(const Web& w);
  LaurentPoly at_N(const Web& w, int N);
  /// Sum of coef_i * <web_i> for coefficients in Z[a^{+-1}, q^{+-1}], added before a single
  /// final reduction.
  RationalFn symbolic_sum(const std::vector<std::pair<LaurentPoly, Web>>& terms);
  LaurentPoly at_N_sum(const std::vector<std::pair<LaurentPoly, Web>>& terms, int N);
  Stats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Process-wide evaluator with the default policy.
Evaluator& default_evaluator();

/// Symbolic evaluation in Q(a, q).
RationalFn evaluate(const Web& w);
/// Evaluation at a = q^N as a Laurent polynomial in q.
LaurentPoly evaluate_at_N(const Web& w, int N);

}  // namespace qholo
