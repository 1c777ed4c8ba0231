#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "qholo/ladder.hpp"

namespace qholo::testing {

struct LadderSpec {
  std::vector<int> colors;
  std::vector<LadderStep> steps;
};

// Random closed ladder on `strands` strands: `rungs` random rungs followed by the rungs
// needed to restore the initial colors. Colors stay in [0, max_color].
LadderSpec random_ladder(std::mt19937_64& rng, int strands, int rungs, int max_color);

// Random ladder web with at most max_edges edges (retries until it fits and is nonempty).
Web random_ladder_web(std::mt19937_64& rng, int strands, int max_edges, int max_color);

}  // namespace qholo::testing
