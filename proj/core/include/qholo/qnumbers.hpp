#pragma once

#include <utility>
#include <vector>

#include "qholo/rational.hpp"

namespace qholo {

/// Balanced quantum integer [n] = (q^n - q^-n)/(q - q^-1); [-n] = -[n].
LaurentPoly q_int(int n);

/// Balanced Gaussian binomial [n choose k] = prod_{i=1..k} [n-i+1]/[i].
/// Zero for k < 0; for n >= 0 also zero when k > n. Negative n follows the same product.
LaurentPoly q_binomial(int n, int k);

/// (a^j - a^-j)/(q^j - q^-j). Throws for j = 0.
RationalFn a_integer(int j);

/// The rank-shifted integer [N+s] with a standing for q^N.
RationalFn n_integer(int s);

/// [N+s choose k] with a standing for q^N; zero for k < 0.
RationalFn n_binomial(int s, int k);

/// Value of a closed circle colored k: [N choose k] in the a-variable.
RationalFn circle_value(int k);

/// Lagrange interpolation in a from samples (N, value at a = q^N).
///
/// Finds the unique f with a-degree in [-a_degree_bound, a_degree_bound] and coefficients
/// in Q(q) matching the first 2*bound+1 samples, then checks every remaining sample.
/// Throws InterpolationError on too few samples, repeated N, or a failed check.
RationalFn interpolate_in_a(const std::vector<std::pair<int, LaurentPoly>>& samples, int a_degree_bound);

}  // namespace qholo
