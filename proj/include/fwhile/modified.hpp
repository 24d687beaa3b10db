#pragma once

#include <set>
#include <string>
#include <vector>

#include "fwhile/syntax.hpp"

namespace fwhile {

using VarSet = std::set<std::string>;

// Per-node result of the modified analysis: the variables assigned on the
// way to (pre) and through (post) each statement.
struct ModAnnotation {
  struct Entry {
    VarSet pre;
    VarSet post;
  };
  std::vector<Entry> byNode;  // indexed by NodeId

  const Entry& at(NodeId n) const { return byNode.at(n); }
};

// Forward traversal from the entry set m0. Per node:
//   assign    post = pre + {x}
//   skip      post = pre
//   seq       threads the sets through
//   if        branches analyzed from pre; post = union of branch posts
//   while     post = pre + assignedVars(body); body analyzed under post
//   fork      threads analyzed from pre; post = union of thread posts
// Every derived post equals pre + assignedVars(node).
ModAnnotation modifiedAnalysis(const Program& p, VarSet m0 = {});

// Node ids of s and everything nested inside it (sequencing, branches,
// loop bodies and fork threads).
std::set<NodeId> subStatements(const Stmt& s);

// The concurrent-modified map C: for a statement inside a fork thread,
// the variables assigned by sibling threads; empty elsewhere. Sibling
// contributions are the thread's newly modified variables (its post-set
// minus the fork's pre-set), so assignments made before the fork do not
// blacklist expressions. Nested forks accumulate by union.
struct ConcMap {
  std::vector<VarSet> byNode;  // indexed by NodeId

  const VarSet& at(NodeId n) const { return byNode.at(n); }
};

ConcMap concurrentModified(const Program& p, const ModAnnotation& ann);

// Per-node blacklist: expressions with at least one operand in C(node).
struct MceTable {
  std::vector<ExprUniverse::Mask> byNode;

  ExprUniverse::Mask at(NodeId n) const { return byNode.at(n); }
};

MceTable mceTable(const Program& p, const ConcMap& cmap,
                  const ExprUniverse& u);

// mce for a single node as a plain set.
std::set<ExprId> mce(NodeId node, const ConcMap& cmap,
                     const std::set<ExprId>& universe);

}  // namespace fwhile
