#include "qholo/ladder.hpp"

#include <string>

namespace qholo {

std::vector<int> ladder_colors(std::vector<int> colors, const std::vector<LadderStep>& steps) {
  const int n = static_cast<int>(colors.size());
  for (const auto& s : steps) {
    if (s.strand < 0 || s.strand + 1 >= n || s.amount < 0)
      throw Error("ladder step out of range at strand " + std::to_string(s.strand));
    auto& lo = colors[static_cast<std::size_t>(s.strand)];
    auto& hi = colors[static_cast<std::size_t>(s.strand + 1)];
    auto& from = s.kind == LadderStep::kE ? hi : lo;
    auto& to = s.kind == LadderStep::kE ? lo : hi;
    if (from < s.amount) throw Error("ladder color would become negative at strand " + std::to_string(s.strand));
    from -= s.amount;
    to += s.amount;
  }
  return colors;
}

Web annular_ladder(const std::vector<int>& colors, const std::vector<LadderStep>& steps) {
  if (ladder_colors(colors, steps) != colors) throw Error("ladder does not return to its initial colors");
  WebBuilder b;
  std::vector<int> cur = colors;
  std::vector<int> bottom_tail(colors.size()), open_head(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const int e = b.add_edge(colors[i]);
    bottom_tail[i] = 2 * e;
    open_head[i] = 2 * e + 1;
  }
  // Picture: strands go up at x = 0..n-1, closures pass to the left.
  for (const auto& s : steps) {
    if (s.amount == 0) continue;
    const auto lo = static_cast<std::size_t>(s.strand), hi = lo + 1;
    const int rung = b.add_edge(s.amount);
    if (s.kind == LadderStep::kE) {
      cur[hi] -= s.amount;
      cur[lo] += s.amount;
      const int up_hi = b.add_edge(cur[hi]), up_lo = b.add_edge(cur[lo]);
      b.add_vertex({open_head[hi], 2 * up_hi, 2 * rung});      // split, rung leaves to the left
      b.add_vertex({open_head[lo], 2 * rung + 1, 2 * up_lo});  // merge, rung arrives from the right
      open_head[hi] = 2 * up_hi + 1;
      open_head[lo] = 2 * up_lo + 1;
    } else {
      cur[lo] -= s.amount;
      cur[hi] += s.amount;
      const int up_lo = b.add_edge(cur[lo]), up_hi = b.add_edge(cur[hi]);
      b.add_vertex({open_head[lo], 2 * rung, 2 * up_lo});      // split, rung leaves to the right
      b.add_vertex({2 * rung + 1, open_head[hi], 2 * up_hi});  // merge, rung arrives from the left
      open_head[lo] = 2 * up_lo + 1;
      open_head[hi] = 2 * up_hi + 1;
    }
  }
  for (std::size_t i = 0; i < colors.size(); ++i) b.add_vertex({open_head[i], bottom_tail[i]});
  return b.finish(true);
}

}  // namespace qholo
