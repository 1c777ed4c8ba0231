#include "kernel.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "qholo/errors.hpp"

namespace qholo::detail {
namespace {

using u64 = std::uint64_t;

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 x, u64 p) { return pow_mod(x, p - 2, p); }

// Primes just below 2^31, so products of residues fit in 64 bits.
u64 nth_prime(int i) {
  static std::vector<u64> primes;
  while (static_cast<int>(primes.size()) <= i) {
    Integer c(primes.empty() ? Integer((1UL << 31) - 1) : Integer(static_cast<unsigned long>(primes.back())));
    // Walk downward: the next prime below the previous one.
    do c -= 1;
    while (mpz_probab_prime_p(c.get_mpz_t(), 30) == 0);
    primes.push_back(c.get_ui());
  }
  return primes[static_cast<std::size_t>(i)];
}

struct ModEchelon {
  std::vector<int> pivots;            // pivot column of each row, increasing
  std::vector<std::vector<u64>> rows; // fully reduced, pivot entry 1
};

std::vector<u64> reduce_row(const SparseRow& r, u64 p, int cols) {
  std::vector<u64> v(static_cast<std::size_t>(cols), 0);
  for (const auto& [c, x] : r.entries) v[static_cast<std::size_t>(c)] = mpz_fdiv_ui(x.get_mpz_t(), p);
  return v;
}

// Reduces v against the echelon; returns true (and inserts) when v is independent.
bool insert(ModEchelon& e, std::vector<u64> v, u64 p) {
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const u64 f = v[static_cast<std::size_t>(e.pivots[i])];
    if (f == 0) continue;
    const auto& row = e.rows[i];
    const u64 g = p - f;
    for (std::size_t c = static_cast<std::size_t>(e.pivots[i]); c < v.size(); ++c)
      if (row[c]) v[c] = (v[c] + g * row[c]) % p;
  }
  std::size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) return false;
  const u64 inv = inv_mod(v[lead], p);
  for (std::size_t c = lead; c < v.size(); ++c)
    if (v[c]) v[c] = v[c] * inv % p;
  // Keep the echelon fully reduced in the new pivot column.
  for (auto& row : e.rows) {
    const u64 f = row[lead];
    if (f == 0) continue;
    const u64 g = p - f;
    for (std::size_t c = lead; c < v.size(); ++c)
      if (v[c]) row[c] = (row[c] + g * v[c]) % p;
  }
  const auto at = std::lower_bound(e.pivots.begin(), e.pivots.end(), static_cast<int>(lead)) - e.pivots.begin();
  e.pivots.insert(e.pivots.begin() + at, static_cast<int>(lead));
  e.rows.insert(e.rows.begin() + at, std::move(v));
  return true;
}

// Rational reconstruction of x mod m with |num|, den <= sqrt(m/2).
std::optional<std::pair<Integer, Integer>> rational_reconstruct(const Integer& x, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = x, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer qt = r0 / r1;
    Integer r2 = r0 - qt * r1, t2 = t0 - qt * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (abs(t1) > bound || t1 == 0) return std::nullopt;
  if (t1 < 0) return std::pair{Integer(-r1), Integer(-t1)};
  return std::pair{r1, t1};
}

std::vector<Integer> primitive(const std::vector<std::pair<Integer, Integer>>& v) {
  Integer l = 1;
  for (const auto& [n, d] : v) l = lcm(l, d);
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& [n, d] : v) {
    out.push_back(n * (l / d));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

bool annihilates(const std::vector<SparseRow>& rows, const std::vector<Integer>& v, std::size_t* failing) {
  Integer s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s = 0;
    for (const auto& [c, x] : rows[i].entries) {
      const Integer& y = v[static_cast<std::size_t>(c)];
      if (y != 0) s += x * y;
    }
    if (s != 0) {
      *failing = i;
      return false;
    }
  }
  return true;
}

}  // namespace

KernelResult integer_kernel(const std::vector<SparseRow>& rows, int cols, std::uint64_t seed) {
  KernelResult out;
  if (cols == 0) return out;

  // Pick an independent subset of rows modulo the first prime. Rows are visited in random
  // order and the scan stops after a run of dependent rows; any row missed this way shows
  // up as a failed certificate below and is added.
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const u64 p0 = nth_prime(0);
  std::vector<std::size_t> chosen;
  {
    ModEchelon e;
    int misses = 0;
    for (std::size_t idx : order) {
      if (static_cast<int>(e.rows.size()) == cols) break;
      if (insert(e, reduce_row(rows[idx], p0, cols), p0)) {
        chosen.push_back(idx);
        misses = 0;
      } else if (++misses > 48) {
        break;
      }
    }
    if (static_cast<int>(e.rows.size()) == cols) {
      out.rank = cols;
      return out;
    }
  }

  for (int attempt = 0; attempt < 64; ++attempt) {
    // Echelon of the chosen rows modulo successive primes; CRT the normalized kernel basis.
    std::vector<int> pivots;
    std::vector<int> free_cols;
    std::vector<std::vector<Integer>> residue;  // [free][col]
    Integer modulus = 1;
    std::vector<std::vector<std::pair<Integer, Integer>>> last;
    bool certified = false;
    std::optional<std::size_t> witness;

    for (int pi = 0; pi < 400 && !certified && !witness; ++pi) {
      const u64 p = nth_prime(pi);
      ModEchelon e;
      for (std::size_t idx : chosen) insert(e, reduce_row(rows[idx], p, cols), p);
      if (pi == 0) {
        pivots = e.pivots;
        std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
        for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
        for (int c = 0; c < cols; ++c)
          if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
        residue.assign(free_cols.size(), std::vector<Integer>(static_cast<std::size_t>(cols), 0));
      } else if (e.pivots != pivots) {
        continue;  // unlucky prime
      }
      const Integer P(static_cast<unsigned long>(p));
      const Integer m_inv = [&] {
        Integer r;
        mpz_invert(r.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t());
        return r;
      }();
      for (std::size_t f = 0; f < free_cols.size(); ++f) {
        const auto fc = static_cast<std::size_t>(free_cols[f]);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
          const u64 r = (p - e.rows[i][fc]) % p;
          Integer& x = residue[f][static_cast<std::size_t>(pivots[i])];
          // x <- x + modulus * ((r - x) * modulus^{-1} mod p)
          Integer t = (Integer(static_cast<unsigned long>(r)) - x) % P;
          if (t < 0) t += P;
          t = t * m_inv % P;
          x += modulus * t;
        }
        residue[f][fc] = 1;
      }
      modulus *= P;

      std::vector<std::vector<std::pair<Integer, Integer>>> rec;
      bool ok = true;
      for (std::size_t f = 0; f < free_cols.size() && ok; ++f) {
        std::vector<std::pair<Integer, Integer>> v;
        v.reserve(static_cast<std::size_t>(cols));
        for (int c = 0; c < cols && ok; ++c) {
          auto r = rational_reconstruct(residue[f][static_cast<std::size_t>(c)], modulus);
          if (!r) ok = false;
          else v.push_back(*r);
        }
        rec.push_back(std::move(v));
      }
      if (!ok) continue;
      if (rec != last) {
        last = std::move(rec);
        continue;
      }
      // Stable across two primes: certify exactly against every row.
      std::vector<std::vector<Integer>> basis;
      for (const auto& v : last) {
        basis.push_back(primitive(v));
        std::size_t failing = 0;
        if (!annihilates(rows, basis.back(), &failing)) {
          witness = failing;
          break;
        }
      }
      if (!witness) {
        out.rank = static_cast<int>(pivots.size());
        out.basis = std::move(basis);
        certified = true;
      }
    }
    if (certified) return out;
    if (!witness) throw Error("kernel reconstruction did not stabilize");
    chosen.push_back(*witness);
  }
  throw Error("kernel certification failed repeatedly");
}

}  // namespace qholo::detail
