#include "ladder_corpus.hpp"

namespace qholo::testing {

LadderSpec random_ladder(std::mt19937_64& rng, int strands, int rungs, int max_color) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  LadderSpec spec;
  do {
    spec.colors.assign(static_cast<std::size_t>(strands), 0);
    for (int& c : spec.colors) c = uni(0, max_color);
  } while (std::all_of(spec.colors.begin(), spec.colors.end(), [](int c) { return c == 0; }));
  std::vector<int> cur = spec.colors;
  for (int r = 0; r < rungs; ++r) {
    const int i = uni(0, strands - 2);
    const bool e = uni(0, 1) == 1;
    const int from = cur[static_cast<std::size_t>(e ? i + 1 : i)];
    const int room = max_color - cur[static_cast<std::size_t>(e ? i : i + 1)];
    const int top = std::min(from, room);
    if (top <= 0) continue;
    const int amount = uni(1, top);
    spec.steps.push_back({i, e ? LadderStep::kE : LadderStep::kF, amount});
    cur = ladder_colors(cur, {spec.steps.back()});
  }
  // Restore: sweep left to right until every strand has its initial color back.
  while (cur != spec.colors) {
    for (int i = 0; i + 1 < strands; ++i) {
      int diff = 0;  // surplus of strands 0..i that must cross to the right
      for (int j = 0; j <= i; ++j) diff += cur[static_cast<std::size_t>(j)] - spec.colors[static_cast<std::size_t>(j)];
      const int amount = diff > 0 ? std::min(diff, cur[static_cast<std::size_t>(i)])
                                  : std::min(-diff, cur[static_cast<std::size_t>(i + 1)]);
      if (amount == 0) continue;
      spec.steps.push_back({i, diff > 0 ? LadderStep::kF : LadderStep::kE, amount});
      cur = ladder_colors(cur, {spec.steps.back()});
    }
  }
  return spec;
}

Web random_ladder_web(std::mt19937_64& rng, int strands, int max_edges, int max_color) {
  for (;;) {
    const int rungs = std::uniform_int_distribution<int>(1, std::max(1, max_edges / 3))(rng);
    const LadderSpec spec = random_ladder(rng, strands, rungs, max_color);
    Web w = annular_ladder(spec.colors, spec.steps);
    if (w.num_vertices() > 0 && w.num_edges() <= max_edges) return w;
  }
}

}  // namespace qholo::testing
