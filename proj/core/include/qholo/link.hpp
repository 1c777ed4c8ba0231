#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qholo/ladder.hpp"
#include "qholo/rational.hpp"
#include "qholo/reduce.hpp"

namespace qholo {

/// Braid word with per-strand colors. Generator +i crosses strands i and i+1 (1-based)
/// positively, -i negatively. colors[p] is the color of the strand entering the braid at
/// position p; strands in one closure cycle must share their color.
struct ColoredBraid {
  int strands = 1;
  std::vector<int> word;
  std::vector<int> colors;

  /// Closure cycles as lists of bottom positions, ordered by smallest position.
  std::vector<std::vector<int>> cycles() const;
  int num_components() const { return static_cast<int>(cycles().size()); }
  /// component index of each bottom position
  std::vector<int> component_of_position() const;
  /// Sum of the generator signs.
  int writhe() const;
  /// Per component, the sum of signs of crossings between its own strands (blackboard framing).
  std::vector<int> self_writhes() const;
  /// The same braid with every strand of component c colored colors[c].
  ColoredBraid with_component_colors(const std::vector<int>& colors) const;
};

/// Throws ParseError on out-of-range generators, bad color counts or colors that differ
/// within a closure cycle.
void validate_braid(const ColoredBraid& b);

/// Accepts "s=2; w=[1,1,1]; colors=[1,1]", the compact "2;[1,1,1];[1,1]" and the JSON
/// object {"strands": 2, "word": [1,1,1], "colors": [1,1]}. Errors carry a character offset.
ColoredBraid parse_braid(const std::string& text);

std::string braid_to_string(const ColoredBraid& b);

/// Color of one component: a single column (1^n) or a single row (n).
struct ComponentColor {
  enum Kind { kColumn, kRow };
  Kind kind = kColumn;
  int n = 1;
};
using ColorSpec = std::vector<ComponentColor>;

/// One term of the expanded crossing replacement: coefficient sign * q^q_power times the
/// annular closure of the ladder.
struct LadderTerm {
  int sign = 1;
  int q_power = 0;
  std::vector<LadderStep> steps;
};

/// Expands every crossing into its ladder sum (no merging). Crossings touching a color-0
/// strand have a single term with coefficient 1.
std::vector<LadderTerm> expand_crossings(const ColoredBraid& b);

/// Crossing replacement, closed up and merged by canonical web code.
WebCombination resolve_crossings(const ColoredBraid& b);

/// Same as resolve_crossings with Laurent-polynomial coefficients, ready for evaluation.
std::vector<std::pair<LaurentPoly, Web>> resolve_to_webs(const ColoredBraid& b);

/// Framed invariant of the closure with each strand carrying the column color in b.colors.
RationalFn colored_homfly_columns(const ColoredBraid& b, Evaluator& ev = default_evaluator());
/// Same, at a = q^N.
LaurentPoly colored_homfly_columns_at_N(const ColoredBraid& b, int N, Evaluator& ev = default_evaluator());

/// Colored invariant for a per-component color spec. All components must be columns, or
/// all rows; rows go through X_rows(a, q) = (-1)^{sum n} X_columns(a, 1/q).
RationalFn colored_homfly(const ColoredBraid& b, const ColorSpec& spec, Evaluator& ev = default_evaluator());

/// Scalar by which one curl on a strand colored (1^n) multiplies the invariant, computed
/// from the curl diagram (closure of a single crossing on two strands).
RationalFn framing_factor(int n, bool positive = true, Evaluator& ev = default_evaluator());

}  // namespace qholo
