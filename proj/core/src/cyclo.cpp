#include "cyclo.hpp"

#include <mutex>
#include <unordered_map>

namespace qholo::detail {

const LaurentPoly& cyclotomic(int d) {
  static std::mutex mu;
  static std::unordered_map<int, LaurentPoly> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  LaurentPoly p = LaurentPoly::variable(Var::q, d) - 1;
  for (int k = 1; k < d; ++k)
    if (d % k == 0) p = divide_exact(p, cyclotomic(k));
  std::lock_guard lock(mu);
  return cache.emplace(d, std::move(p)).first->second;
}

CycloFrac CycloFrac::inverse_q_diff(int i) {
  // q^i - q^-i = q^-i (q^{2i} - 1) = q^-i prod_{d | 2i} Phi_d(q)
  const int n = i < 0 ? -i : i;
  CycloFrac r(LaurentPoly::monomial(i < 0 ? -1 : 1, {0, n, 0}));
  for (int d = 1; d <= 2 * n; ++d)
    if ((2 * n) % d == 0) r.den_[d] += 1;
  return r;
}

CycloFrac& CycloFrac::operator*=(const CycloFrac& o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (const auto& [d, e] : o.den_) den_[d] += e;
  return *this;
}

CycloFrac& CycloFrac::operator*=(const LaurentPoly& p) {
  num_ *= p;
  if (num_.is_zero()) den_.clear();
  return *this;
}

CycloFrac& CycloFrac::operator+=(const CycloFrac& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    if (num_.is_zero()) den_.clear();
    return *this;
  }
  LaurentPoly x = num_, y = o.num_;
  std::map<int, int> lcm = den_;
  for (const auto& [d, e] : o.den_) {
    int& mine = lcm[d];
    if (e > mine) mine = e;
  }
  for (const auto& [d, e] : lcm) {
    auto it = den_.find(d);
    const int ex = e - (it == den_.end() ? 0 : it->second);
    auto jt = o.den_.find(d);
    const int ey = e - (jt == o.den_.end() ? 0 : jt->second);
    if (ex > 0) x *= cyclotomic(d).pow(static_cast<unsigned>(ex));
    if (ey > 0) y *= cyclotomic(d).pow(static_cast<unsigned>(ey));
  }
  num_ = x + y;
  den_ = std::move(lcm);
  if (num_.is_zero()) den_.clear();
  return *this;
}

void CycloFrac::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = try_divide(num_, cyclotomic(it->first));
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

RationalFn CycloFrac::to_rational() const {
  CycloFrac r = *this;
  r.reduce();
  LaurentPoly den(1L);
  for (const auto& [d, e] : r.den_) den *= cyclotomic(d).pow(static_cast<unsigned>(e));
  if (den.is_one()) return RationalFn(r.num_);
  const VarSet vars = r.num_.vars() | kVarsQ;
  LaurentPoly n = r.num_;
  n.declare(vars);
  den.declare(vars);
  return RationalFn::from_canonical(std::move(n), std::move(den));
}

}  // namespace qholo::detail
