#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fwhile/syntax.hpp"

namespace fwhile {

// Finite map from variable names to integers. Reading an unmapped
// variable is an error, never a default.
using State = std::map<std::string, std::int64_t>;

// Fixes the execution order of each fork's threads: a permutation of
// 0..n-1 per fork node id. Forks absent from the map run in identity
// order.
struct Schedule {
  std::map<NodeId, std::vector<int>> perms;

  // The order for a fork with `threads` threads (0-based indices).
  std::vector<int> orderFor(NodeId fork, std::size_t threads) const;

  // "7:2,1" form, 1-based thread numbers; "identity" when empty.
  std::string text() const;
};

struct RunResult {
  State state;
  std::map<ExprId, std::uint64_t> evalCount;
  std::uint64_t stepCount{0};

  std::uint64_t evalsOf(const ExprId& e) const {
    auto it = evalCount.find(e);
    return it == evalCount.end() ? 0 : it->second;
  }
  std::uint64_t totalEvals() const;
};

struct RunError {
  enum class Kind { UnboundVariable, FuelExhausted, ArithmeticOverflow };
  Kind kind{Kind::UnboundVariable};
  std::string variable;  // UnboundVariable
  NodeId node{0};        // FuelExhausted / ArithmeticOverflow

  const char* kindName() const;
};

using RunOutcome = std::variant<RunResult, RunError>;

inline bool succeeded(const RunOutcome& o) {
  return std::holds_alternative<RunResult>(o);
}

// Observation points for tests: called with the node id and the state on
// entering / after leaving each statement.
struct RunHooks {
  std::function<void(NodeId, const State&)> onEnter;
  std::function<void(NodeId, const State&)> onExit;
};

// Denotational evaluation; 64-bit arithmetic with overflow reported as an
// error rather than wrapping.
std::variant<std::int64_t, RunError> evalA(const AExpr& a, const State& s);
std::variant<bool, RunError> evalB(const BExpr& b, const State& s);

// Big-step execution. Assignments, guard evaluations and fork dispatches
// each consume one unit of fuel; skip and sequencing are free. Fork
// threads run atomically, one after another, in the schedule's order.
RunOutcome run(const Program& p, State initial, const Schedule& sched,
               std::uint64_t fuel, const RunHooks* hooks = nullptr);

struct ScheduleBounds {
  std::size_t maxThreads = 4;  // per fork
  std::size_t maxForks = 3;    // distinct fork nodes
};

class ScheduleBoundError : public std::runtime_error {
 public:
  ScheduleBoundError(std::string message, NodeId node)
      : std::runtime_error(std::move(message)), node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

// Fork nodes of p in preorder, with their thread counts.
std::vector<std::pair<NodeId, std::size_t>> forkNodes(const Program& p);

// Every schedule: the cartesian product of all permutations per fork.
// Throws ScheduleBoundError past the bounds.
std::vector<Schedule> allSchedules(const Program& p,
                                   const ScheduleBounds& bounds = {});

}  // namespace fwhile
