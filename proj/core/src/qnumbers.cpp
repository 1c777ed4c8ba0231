#include "qholo/qnumbers.hpp"

#include <map>
#include <mutex>
#include <set>

namespace qholo {

namespace {

LaurentPoly q_pow(int k) { return LaurentPoly::variable(Var::q, k).declare(kVarsQ); }

// q^n - q^-n
LaurentPoly q_diff(int n) { return q_pow(n) - q_pow(-n); }

template <class Value>
class Cache {
 public:
  template <class F>
  Value get(std::pair<int, int> key, F&& make) {
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    Value v = make();
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, Value> map_;
};

}  // namespace

LaurentPoly q_int(int n) {
  if (n < 0) return -q_int(-n);
  std::vector<LaurentPoly::Term> ts;
  for (int e = n - 1; e >= 1 - n; e -= 2) ts.push_back({LaurentPoly::pack({0, e, 0}), 1});
  return LaurentPoly::from_terms(std::move(ts), kVarsQ);
}

LaurentPoly q_binomial(int n, int k) {
  if (k < 0) return LaurentPoly(0L).declare(kVarsQ);
  if (n >= 0 && k > n) return LaurentPoly(0L).declare(kVarsQ);
  if (k == 0) return LaurentPoly(1L).declare(kVarsQ);
  static Cache<LaurentPoly> cache;
  return cache.get({n, k}, [n, k] {
    if (n >= 0 && 2 * k > n) return q_binomial(n, n - k);
    LaurentPoly num(1L), den(1L);
    for (int i = 1; i <= k; ++i) {
      num *= q_diff(n - i + 1);
      den *= q_diff(i);
    }
    LaurentPoly r = divide_exact(num, den);
    return r.declare(kVarsQ);
  });
}

RationalFn a_integer(int j) {
  if (j == 0) throw Error("a_integer(0): the denominator q^0 - q^0 vanishes identically");
  LaurentPoly num = LaurentPoly::variable(Var::a, j) - LaurentPoly::variable(Var::a, -j);
  return RationalFn(num.declare(kVarsAQ), q_diff(j).declare(kVarsAQ));
}

namespace {

// a q^s - a^-1 q^-s, i.e. (q - q^-1)[N+s] under a = q^N.
LaurentPoly a_shift_diff(int s) {
  return (LaurentPoly::monomial(1, {1, s, 0}) - LaurentPoly::monomial(1, {-1, -s, 0})).declare(kVarsAQ);
}

}  // namespace

RationalFn n_integer(int s) {
  return RationalFn(a_shift_diff(s), q_diff(1).declare(kVarsAQ));
}

RationalFn n_binomial(int s, int k) {
  if (k < 0) return RationalFn(LaurentPoly(0L).declare(kVarsAQ));
  if (k == 0) return RationalFn(LaurentPoly(1L).declare(kVarsAQ));
  static Cache<RationalFn> cache;
  return cache.get({s, k}, [s, k] {
    LaurentPoly num(1L), den(1L);
    for (int i = 1; i <= k; ++i) {
      num *= a_shift_diff(s - i + 1);
      den *= q_diff(i);
    }
    return RationalFn(num.declare(kVarsAQ), den.declare(kVarsAQ));
  });
}

RationalFn circle_value(int k) { return n_binomial(0, k); }

RationalFn interpolate_in_a(const std::vector<std::pair<int, LaurentPoly>>& samples, int a_degree_bound) {
  if (a_degree_bound < 0) throw InterpolationError("a-degree bound must be nonnegative");
  const std::size_t need = 2 * static_cast<std::size_t>(a_degree_bound) + 1;
  if (samples.size() < need)
    throw InterpolationError("need at least " + std::to_string(need) + " samples for a-degree bound " +
                             std::to_string(a_degree_bound) + ", got " + std::to_string(samples.size()));
  std::set<int> seen;
  for (const auto& [N, v] : samples)
    if (!seen.insert(N).second) throw InterpolationError("repeated sample N = " + std::to_string(N));

  const LaurentPoly a = LaurentPoly::variable(Var::a).declare(kVarsAQ);
  RationalFn acc(LaurentPoly(0L).declare(kVarsAQ));
  for (std::size_t k = 0; k < need; ++k) {
    const int Nk = samples[k].first;
    // a^B f(a) is a polynomial of degree <= 2B; its value at q^Nk is q^{B Nk} f_k.
    LaurentPoly num = samples[k].second.shifted({0, a_degree_bound * Nk, 0}).declare(kVarsAQ);
    LaurentPoly den(1L);
    for (std::size_t m = 0; m < need; ++m) {
      if (m == k) continue;
      num *= a - q_pow(samples[m].first);
      den *= q_pow(Nk) - q_pow(samples[m].first);
    }
    acc += RationalFn(num, den.declare(kVarsAQ));
  }
  acc *= RationalFn(LaurentPoly::variable(Var::a, -a_degree_bound).declare(kVarsAQ));

  for (const auto& [N, v] : samples) {
    const Binding b[] = {Binding::a_to_q_power(N)};
    const RationalFn got = specialize(acc, b);
    if (got != RationalFn(v))
      throw InterpolationError("samples are inconsistent with a-degree bound " + std::to_string(a_degree_bound) +
                               " (check failed at N = " + std::to_string(N) + ")");
  }
  return acc;
}

}  // namespace qholo
