#include "hecke_oracle.hpp"

#include <map>
#include <stdexcept>

namespace qholo::testing {
namespace {

using Perm = std::vector<int>;
using Element = std::map<Perm, LaurentPoly>;
using DeltaPoly = std::map<int, LaurentPoly>;  // sum_k c_k * delta^k

LaurentPoly z() { return LaurentPoly::monomial(1, {0, 1, 0}, kVarsAQ) - LaurentPoly::monomial(1, {0, -1, 0}, kVarsAQ); }

void add(Element& e, const Perm& p, const LaurentPoly& c) {
  auto& slot = e[p];
  slot += c;
  if (slot.is_zero()) e.erase(p);
}

// x * T_i
Element times_generator(const Element& x, int i) {
  Element out;
  for (const auto& [w, c] : x) {
    Perm ws = w;
    std::swap(ws[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(i + 1)]);
    if (w[static_cast<std::size_t>(i)] < w[static_cast<std::size_t>(i + 1)]) {
      add(out, ws, c);
    } else {
      add(out, w, c * z());
      add(out, ws, c);
    }
  }
  return out;
}

void add_scaled(DeltaPoly& acc, const DeltaPoly& t, const LaurentPoly& c, int extra_delta) {
  for (const auto& [k, p] : t) {
    auto& slot = acc[k + extra_delta];
    slot += p * c;
  }
}

struct Tracer {
  std::map<Perm, DeltaPoly> memo;

  DeltaPoly trace(const Element& x) {
    DeltaPoly acc;
    for (const auto& [w, c] : x) add_scaled(acc, trace(w), c, 0);
    return acc;
  }

  DeltaPoly trace(const Perm& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    const int n = static_cast<int>(w.size());
    DeltaPoly r;
    if (n == 1) {
      r[1] = LaurentPoly(1L).declare(kVarsAQ);
    } else if (w.back() == n - 1) {
      Perm sub(w.begin(), w.end() - 1);
      add_scaled(r, trace(sub), LaurentPoly(1L), 1);
    } else {
      int p = 0;
      while (w[static_cast<std::size_t>(p)] != n - 1) ++p;
      Perm w1;
      for (int i = 0; i < n; ++i)
        if (i != p) w1.push_back(w[static_cast<std::size_t>(i)]);
      // T_w = T_{w1} T_{n-2} T_{n-3} ... T_p, and the trace drops T_{n-2} for a factor a.
      Element x{{w1, LaurentPoly(1L).declare(kVarsAQ)}};
      for (int j = n - 3; j >= p; --j) x = times_generator(x, j);
      add_scaled(r, trace(x), LaurentPoly::monomial(1, {1, 0, 0}, kVarsAQ), 0);
    }
    memo.emplace(w, r);
    return r;
  }
};

}  // namespace

RationalFn hecke_homfly(int strands, const std::vector<int>& word) {
  if (strands < 1) throw std::invalid_argument("need a strand");
  Perm id(static_cast<std::size_t>(strands));
  for (int i = 0; i < strands; ++i) id[static_cast<std::size_t>(i)] = i;
  Element x{{id, LaurentPoly(1L).declare(kVarsAQ)}};
  for (int g : word) {
    const int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) throw std::invalid_argument("generator out of range");
    Element y = times_generator(x, i);
    if (g < 0)  // T^{-1} = T - z
      for (const auto& [w, c] : x) add(y, w, -(c * z()));
    x = std::move(y);
  }
  Tracer t;
  const DeltaPoly d = t.trace(x);
  const RationalFn delta(LaurentPoly::monomial(1, {1, 0, 0}, kVarsAQ) - LaurentPoly::monomial(1, {-1, 0, 0}, kVarsAQ),
                         z());
  RationalFn total(0L);
  for (const auto& [k, c] : d) total += RationalFn(c) * delta.pow(k);
  return total;
}

}  // namespace qholo::testing
