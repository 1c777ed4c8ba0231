#pragma once

// Acceptance suites shared by `qholo check` and the acceptance binary. Each suite is exact:
// it either finds every identity it checks to hold, or reports the first counterexample.

#include <cstdint>
#include <string>
#include <vector>

namespace qholo::checks {

struct SuiteResult {
  int id = 0;                 // acceptance criterion number, 0 for auxiliary suites
  std::string name;
  bool pass = true;
  long cases = 0;             // identities checked
  double seconds = 0;
  double limit_seconds = 0;   // 0: no time bound
  std::string detail;         // first failure, or a short summary
};

struct Options {
  std::uint64_t seed = 1;
  int trials = 0;          // 0: the suite's default
  int max_crossings = 8;
  int n_max = -1;          // -1: the suite's default
  std::vector<int> Ns{2, 3, 4};
};

SuiteResult axioms(const Options& o = {});             // 1
SuiteResult skein(const Options& o = {});              // 2
SuiteResult web_coherence(const Options& o = {});      // 3
SuiteResult confluence(const Options& o = {});         // 4
SuiteResult coloring_lattice(const Options& o = {});   // 5
SuiteResult reidemeister(const Options& o = {});       // 6
SuiteResult unknot_recursion(const Options& o = {});   // 7
SuiteResult knot_pipeline(const Options& o = {});      // 8
SuiteResult duality(const Options& o = {});            // 9
SuiteResult algebra(const Options& o = {});            // 10
SuiteResult diagram(const Options& o = {});            // a->q^N then q->1 equals a,q->1, on its own

/// Suite by command-line name ("skein", "confluence", ...); throws on unknown names.
SuiteResult run(const std::string& name, const Options& o = {});
std::vector<std::string> suite_names();

}  // namespace qholo::checks
