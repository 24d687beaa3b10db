#include "fwhile/verify.hpp"

#include <random>
#include <sstream>

#include "fwhile/printer.hpp"

namespace fwhile {

Schedule translateSchedule(const Schedule& sched, const Program& from,
                           const Program& to) {
  auto fromForks = forkNodes(from);
  auto toForks = forkNodes(to);
  Schedule out;
  for (std::size_t i = 0; i < fromForks.size() && i < toForks.size(); ++i) {
    auto it = sched.perms.find(fromForks[i].first);
    if (it != sched.perms.end()) out.perms[toForks[i].first] = it->second;
  }
  return out;
}

namespace {

std::string stateText(const State& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [var, value] : s) {
    if (!first) out << ", ";
    first = false;
    out << var << ": " << value;
  }
  out << "}";
  return out.str();
}

}  // namespace

VerifyReport verifyOptimization(const Program& original,
                                const OptimizedProgram& optimized,
                                const VerifyOptions& opts) {
  VerifyReport report;
  auto schedules = allSchedules(original, opts.bounds);
  report.schedules = schedules.size();

  const auto vars = allVars(original);
  const auto universe = nontrivialExprs(original);
  // Each original statement maps to at most two, plus inserted temp
  // assignments bounded per statement by the universe size.
  const std::uint64_t optFuel = opts.fuel * (2 + universe.size());

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::int64_t> draw(-opts.range, opts.range);

  auto fail = [&](const State& s0, const Schedule& sched, std::string detail) {
    if (report.pass) {
      report.firstFailure = Counterexample{s0, sched.text(), std::move(detail)};
      report.pass = false;
    }
  };

  for (int i = 0; i < opts.states; ++i) {
    State s0;
    for (const auto& v : vars) s0[v] = draw(rng);
    for (const auto& sched : schedules) {
      Schedule optSched =
          translateSchedule(sched, original, optimized.program);
      RunOutcome orig = run(original, s0, sched, opts.fuel);
      RunOutcome opt = run(optimized.program, s0, optSched, optFuel);
      ++report.comparisons;

      if (!succeeded(orig)) {
        const auto& err = std::get<RunError>(orig);
        if (err.kind == RunError::Kind::FuelExhausted) {
          ++report.skippedFuel;
          continue;
        }
        if (succeeded(opt)) {
          fail(s0, sched,
               std::string("original fails with ") + err.kindName() +
                   " but optimized run succeeds");
        } else if (std::get<RunError>(opt).kind != err.kind) {
          fail(s0, sched,
               std::string("error kinds differ: original ") + err.kindName() +
                   ", optimized " + std::get<RunError>(opt).kindName());
        }
        continue;
      }
      if (!succeeded(opt)) {
        fail(s0, sched,
             std::string("optimized run fails with ") +
                 std::get<RunError>(opt).kindName() +
                 " but the original succeeds");
        continue;
      }

      const auto& origResult = std::get<RunResult>(orig);
      const auto& optResult = std::get<RunResult>(opt);
      State stripped = stripTemps(optResult.state, optimized.temps);
      if (stripped != origResult.state) {
        std::string diff = "final states differ";
        for (const auto& [var, value] : origResult.state) {
          auto it = stripped.find(var);
          if (it == stripped.end() || it->second != value) {
            diff += " at " + var + ": original " + stateText(origResult.state) +
                    ", optimized " + stateText(stripped);
            break;
          }
        }
        fail(s0, sched, diff);
        continue;
      }
      for (const auto& e : universe.exprs) {
        if (optResult.evalsOf(e) > origResult.evalsOf(e)) {
          fail(s0, sched,
               "expression " + exprKey(e) + " evaluated " +
                   std::to_string(optResult.evalsOf(e)) +
                   " times after optimization, " +
                   std::to_string(origResult.evalsOf(e)) + " before");
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace fwhile
