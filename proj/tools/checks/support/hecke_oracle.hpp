#pragma once

#include <vector>

#include "qholo/rational.hpp"

namespace qholo::testing {

// Framed HOMFLY of a braid closure straight from the skein axioms, computed in the Hecke
// algebra (T - T^{-1} = q - 1/q) with the Markov trace normalized by the curl and unknot
// axioms. Knows nothing about webs.
RationalFn hecke_homfly(int strands, const std::vector<int>& word);

}  // namespace qholo::testing
