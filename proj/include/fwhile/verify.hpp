#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fwhile/interp.hpp"
#include "fwhile/transform.hpp"

namespace fwhile {

struct VerifyOptions {
  int states = 50;
  std::uint64_t seed = 0;
  std::uint64_t fuel = 10000;
  std::int64_t range = 16;  // initial values drawn from [-range, range]
  ScheduleBounds bounds{};
};

struct Counterexample {
  State initial;
  std::string schedule;
  std::string detail;
};

struct VerifyReport {
  bool pass{true};
  std::uint64_t comparisons{0};
  std::uint64_t skippedFuel{0};  // original run exhausted its fuel
  std::size_t schedules{0};
  std::optional<Counterexample> firstFailure;
};

// Runs original and optimized over random initial states (binding every
// source variable) crossed with every schedule, and checks: final states
// agree after temps are stripped, error outcomes agree in kind, and no
// expression is evaluated more often in the optimized program. The
// optimized run gets proportionally more fuel to cover the statements the
// rewrite adds; a fuel-exhausted original run has nothing observable to
// compare and is skipped.
VerifyReport verifyOptimization(const Program& original,
                                const OptimizedProgram& optimized,
                                const VerifyOptions& opts = {});

// Translates a schedule over the original program's fork nodes to the
// optimized program's (forks correspond positionally in preorder).
Schedule translateSchedule(const Schedule& sched, const Program& from,
                           const Program& to);

}  // namespace fwhile
