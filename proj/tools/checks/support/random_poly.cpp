#include "support/random_poly.hpp"

namespace qholo::testing {

namespace {

LaurentPoly make(std::mt19937_64& rng, VarSet vars, int max_terms, int lo, int hi) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> ex(lo, hi);
  std::uniform_int_distribution<int> co(-9, 9);
  std::vector<LaurentPoly::Term> ts;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Exponents e{0, 0, 0};
    for (int v = 0; v < kNumVars; ++v)
      if (vars & (1u << v)) e[v] = ex(rng);
    ts.push_back({LaurentPoly::pack(e), co(rng)});
  }
  return LaurentPoly::from_terms(std::move(ts), vars);
}

}  // namespace

LaurentPoly random_poly(std::mt19937_64& rng, VarSet vars, int max_terms, int span) {
  return make(rng, vars, max_terms, -span, span);
}

LaurentPoly random_nonneg_poly(std::mt19937_64& rng, VarSet vars, int max_terms, int max_deg) {
  return make(rng, vars, max_terms, 0, max_deg);
}

}  // namespace qholo::testing
