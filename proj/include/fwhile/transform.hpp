#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fwhile/interp.hpp"
#include "fwhile/pre_analysis.hpp"
#include "fwhile/syntax.hpp"

namespace fwhile {

// Names for the temporaries the optimizer introduces: t1, t2, ... in order
// of first introduction. The prefix grows ("tt", "ttt", ...) if the source
// program already uses a name of that shape.
struct TempTable {
  std::string prefix = "t";
  std::vector<ExprId> order;             // introduction order
  std::map<ExprId, std::string> names;

  bool empty() const { return names.empty(); }
  bool has(const ExprId& e) const { return names.count(e) != 0; }
  const std::string& nameOf(const ExprId& e) const { return names.at(e); }
  bool isTempName(const std::string& name) const;
};

enum class RewriteKind { Replace, Split, BranchInsert, PreheaderInsert };
const char* rewriteKindName(RewriteKind k);

struct Rewrite {
  NodeId node;  // node of the original program the rewrite anchors to
  RewriteKind kind;
  ExprId expr;
};

struct OptimizedProgram {
  Program program;  // fresh preorder node ids
  TempTable temps;
  std::vector<Rewrite> rewrites;
};

struct TransformOptions {
  std::string tempPrefix = "t";
  // Test fixture: rewrite every evaluation whose expression has a temp
  // into a temp read, ignoring the availability guard. Produces an
  // intentionally broken program for exercising the verifier.
  bool unsafeReplaceWithoutGuard = false;
};

// Partial redundancy elimination. Runs the analyses, then rewrites:
// redundant evaluations become temp reads, first evaluations are split
// through the temp, availability is balanced at branch joins and hoisted
// into loop preheaders, and fork threads are rewritten in place. An
// expression that is never redundant anywhere gets no temp.
OptimizedProgram optimize(const Program& p, const TransformOptions& opts = {});

// The state restricted to variables that are not temporaries.
State stripTemps(const State& s, const TempTable& temps);

// The executable reading of the similarity relation between an original
// state and an optimized-run state: they agree on non-temp variables, and
// every temp assigned for an available expression holds that expression's
// current value.
bool similarity(const State& sigma, const State& sigmaStar,
                const std::set<ExprId>& cpav, const TempTable& temps);

}  // namespace fwhile
