#pragma once

#include "qholo/poly.hpp"
#include "qholo/web.hpp"

namespace qholo::testing {

// Brute-force state sum for a closed web at a = q^N: edges are labelled by subsets of
// {1..N}, vertices contribute crossing-count weights and every level curve contributes its
// rotation number. Exponential; only for small webs. `outer_face` picks which face of the
// (first) map component plays the unbounded region.
LaurentPoly moy_state_sum(const Web& w, int N, int outer_face = 0);

}  // namespace qholo::testing
