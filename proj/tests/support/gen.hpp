#pragma once

#include <random>
#include <string>
#include <vector>

#include "fwhile/interp.hpp"
#include "fwhile/syntax.hpp"

// Random program generator for the property and acceptance suites.
// Loops are bounded by construction: each one counts a dedicated fresh
// variable up to a constant at most eight above its initial value, and
// nothing else writes the counter.

namespace fwhile::testgen {

struct GenParams {
  int maxLeafStmts = 30;
  int maxIfs = 3;
  int maxForks = 2;
  int maxThreads = 3;
  int maxLoops = 2;
  bool loopFree = false;
  int exprReusePercent = 45;  // chance an assign reuses an earlier rhs
  std::vector<std::string> vars = {"a", "b", "c", "d", "x", "y"};
};

Program genProgram(std::mt19937_64& rng, const GenParams& params);

// A state binding every variable of p, values uniform in [-range, range].
State genState(std::mt19937_64& rng, const Program& p, std::int64_t range = 16);

}  // namespace fwhile::testgen
