#pragma once

// Exact integer kernels of sparse integer matrices (internal to the library).

#include <cstdint>
#include <utility>
#include <vector>

#include "qholo/poly.hpp"

namespace qholo::detail {

struct SparseRow {
  std::vector<std::pair<int, Integer>> entries;  // (column, nonzero value)
};

struct KernelResult {
  int rank = 0;
  /// Primitive integer vectors spanning the rational kernel, one per free column.
  std::vector<std::vector<Integer>> basis;
};

/// Rational kernel of the matrix with the given rows. Elimination runs modulo word-size
/// primes on an independent subset of rows (found in random order); entries are recovered by
/// Chinese remaindering and rational reconstruction, and every basis vector is certified by
/// exact substitution into all rows before it is returned. `seed` fixes the randomness.
KernelResult integer_kernel(const std::vector<SparseRow>& rows, int cols, std::uint64_t seed = 1);

}  // namespace qholo::detail
