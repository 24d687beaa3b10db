#pragma once

#include <vector>

#include "fwhile/modified.hpp"
#include "fwhile/syntax.hpp"

namespace fwhile {

using Mask = ExprUniverse::Mask;

// Per-node expression sets, as bitmasks over the program's universe.
// Invariants: cpav* is a subset of the matching ant* everywhere, and all
// four sets are disjoint from mce at every node.
struct PreAnnotation {
  std::vector<Mask> antPre, antPost;
  std::vector<Mask> cpavPre, cpavPost;
  // For While nodes: the availability invariant at the loop head, i.e.
  // what still holds at the top of every iteration. cpavPre of the node
  // is what arrives from before the loop; the two differ exactly by the
  // preheader insertions the optimizer makes.
  std::vector<Mask> loopHeadCpav;

  void resize(std::size_t nodes) {
    antPre.assign(nodes, 0);
    antPost.assign(nodes, 0);
    cpavPre.assign(nodes, 0);
    cpavPost.assign(nodes, 0);
    loopHeadCpav.assign(nodes, 0);
  }
};

// Backward must-analysis: which expressions every path evaluates before
// any operand changes. antExit is the demand at program exit (empty for
// whole programs). Transfer per node, with A' the incoming post set and
// every set filtered by the node's mce:
//   assign x := a   pre = (A' - mod(x)) + eval(a)
//   skip            pre = A'
//   if              pre = pre(then) * pre(else)
//   while           greatest fixpoint of head = pre(body vs head) * A'
//   fork            pre = union over threads of thread pre sets
void anticipability(const Program& p, const MceTable& mce,
                    const ExprUniverse& u, Mask antExit, PreAnnotation& out);

// Forward may-analysis gated by anticipability at every point: which
// expressions have been evaluated, on some path, with no operand changed
// since, and are still anticipable. Requires ant* already computed.
//   assign x := a   post = ((pre + eval(a)) - mod(x)) * antPost
//   skip            post = pre
//   if              post = (post(then) + post(else)) * antPost
//   while           head invariant = greatest fixpoint of
//                   post(body vs head) * antPre(loop); post = head * antPost
//   fork            threads analyzed from pre (mce-filtered); post = union
//                   of thread post sets * antPost
void condPartialAvailability(const Program& p, const MceTable& mce,
                             const ExprUniverse& u, Mask cpavEntry,
                             PreAnnotation& out);

// The full pipeline over one program.
struct Analysis {
  ExprUniverse universe;
  ModAnnotation modified;
  ConcMap concurrent;
  MceTable mce;
  PreAnnotation pre;
};

Analysis analyze(const Program& p);

}  // namespace fwhile
