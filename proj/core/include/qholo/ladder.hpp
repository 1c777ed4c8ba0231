#pragma once

#include <vector>

#include "qholo/web.hpp"

namespace qholo {

/// One rung of a ladder on vertical strands 0..n-1.
/// kE moves `amount` units from strand i+1 to strand i, kF from strand i to strand i+1.
struct LadderStep {
  enum Kind { kE, kF };
  int strand;  // i: the rung joins strands i and i+1
  Kind kind;
  int amount;
};

/// Closes a ladder around an annulus. Strand 0 is innermost; strands run counterclockwise.
/// The final colors must equal the initial ones. Zero-colored segments disappear.
Web annular_ladder(const std::vector<int>& colors, const std::vector<LadderStep>& steps);

/// Colors after applying the steps; throws Error if any color would become negative.
std::vector<int> ladder_colors(std::vector<int> colors, const std::vector<LadderStep>& steps);

}  // namespace qholo
