// Runs the ten acceptance criteria and prints one line per criterion.
// Usage: acceptance [criterion ids...]   (default: all)

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "suites.hpp"

using namespace qholo::checks;

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  SuiteResult (*const criteria[])(const Options&) = {axioms,           skein,           web_coherence, confluence,
                                                     coloring_lattice, reidemeister,    unknot_recursion,
                                                     knot_pipeline,    duality,         algebra};
  int failed = 0;
  for (int id = 1; id <= 10; ++id) {
    if (!only.empty() && !only.count(id)) continue;
    const SuiteResult r = criteria[id - 1](Options{});
    std::printf("criterion %2d %s  %-32s %8.2f s  %s\n", id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
