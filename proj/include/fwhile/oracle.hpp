#pragma once

#include <stdexcept>
#include <vector>

#include "fwhile/interp.hpp"
#include "fwhile/modified.hpp"
#include "fwhile/syntax.hpp"

// Brute-force reference for the anticipability and availability analyses
// on loop-free programs, used only by tests. Instead of transfer
// functions it materializes every execution order (both branches of each
// if, every permutation of each fork, threads atomic) as an event
// sequence and evaluates the defining conditions on those sequences
// directly, with the same per-node mce blacklist the analyses use.
// Events in sibling threads are invisible to one another; their effect on
// each other is exactly the blacklist, which is what makes the flow-
// insensitive treatment of concurrency comparable between the two sides.

namespace fwhile::oracle {

class PathBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Event {
  enum class Kind : std::uint8_t { VisitPre, VisitPost, Eval, Kill };
  Kind kind;
  NodeId node;
  std::uint32_t data;  // Eval: universe index; Kill: interned variable
};

struct Paths {
  std::vector<std::vector<Event>> paths;
  std::vector<std::string> varNames;              // interned variables
  std::vector<ExprUniverse::Mask> varKillMask;    // exprs mentioning var
  std::vector<std::uint16_t> contextOf;           // node -> context id
  std::vector<std::vector<bool>> siblings;        // context x context
  std::size_t nodes{0};

  std::size_t count() const { return paths.size(); }
};

// Throws PathBoundError on a While statement, a fork beyond the bounds,
// or more than maxPaths paths.
Paths enumeratePaths(const Program& p, const ExprUniverse& u,
                     const ScheduleBounds& bounds = {},
                     std::size_t maxPaths = 1 << 18);

struct PointTables {
  std::vector<ExprUniverse::Mask> antPre, antPost;
  std::vector<ExprUniverse::Mask> cpavPre, cpavPost;
};

PointTables compute(const Paths& paths, const MceTable& mce,
                    const ExprUniverse& u);

}  // namespace fwhile::oracle
