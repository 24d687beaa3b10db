#include <doctest.h>

#include <random>

#include "fwhile/parser.hpp"
#include "fwhile/pre_analysis.hpp"
#include "support/gen.hpp"

using namespace fwhile;

namespace {

const char* kMotivating =
    "v := a - c; u := a + b; "
    "fork { { y := a + b; c := 2; z := a - c } { x := a + b; z := a - c } }";

const ExprId kAb{AOp::Add, Literal::var("a"), Literal::var("b")};
const ExprId kAc{AOp::Sub, Literal::var("a"), Literal::var("c")};

const Stmt* findAssign(const Program& p, const std::string& var,
                       int occurrence = 0) {
  const Stmt* found = nullptr;
  int seen = 0;
  forEachNode(p, [&](const Stmt& n) {
    const auto* a = std::get_if<Assign>(&n.node);
    if (a && a->var == var && seen++ == occurrence && !found) found = &n;
  });
  return found;
}

}  // namespace

TEST_CASE("anticipability on the two-thread example") {
  Program p = parse(kMotivating);
  Analysis a = analyze(p);
  NodeId fork = forkNodes(p)[0].first;
  CHECK(a.universe.toSet(a.pre.antPre[fork]) == std::set<ExprId>{kAb});

  // Inside thread 2 the blacklisted a - c never appears in any set.
  const Stmt* zInThread2 = findAssign(p, "z", 1);
  REQUIRE(zInThread2);
  CHECK((a.pre.antPre[zInThread2->id] & a.universe.bit(kAc)) == 0);
}

TEST_CASE("a final evaluation anticipates exactly itself") {
  Program p = parse("q := 0; x := a + b");
  Analysis a = analyze(p);
  const Stmt* x = findAssign(p, "x");
  CHECK(a.universe.toSet(a.pre.antPre[x->id]) == std::set<ExprId>{kAb});
  CHECK(a.pre.antPost[x->id] == 0);
}

TEST_CASE("availability on the two-thread example") {
  Program p = parse(kMotivating);
  Analysis a = analyze(p);
  const Stmt* u = findAssign(p, "u");
  CHECK((a.pre.cpavPost[u->id] & a.universe.bit(kAb)) != 0);

  const Stmt* xInThread2 = findAssign(p, "x");
  REQUIRE(xInThread2);
  CHECK((a.pre.cpavPre[xInThread2->id] & a.universe.bit(kAb)) != 0);
  CHECK((a.pre.cpavPre[xInThread2->id] & a.universe.bit(kAc)) == 0);

  // Nothing is available at entry.
  CHECK(a.pre.cpavPre[p.root->id] == 0);
}

TEST_CASE("straight-line availability feeds the redundant read") {
  Program p = parse("x := a + b; y := a + b");
  Analysis a = analyze(p);
  const Stmt* y = findAssign(p, "y");
  CHECK(a.universe.toSet(a.pre.cpavPre[y->id]) == std::set<ExprId>{kAb});
}

TEST_CASE("an operand kill erases both demand and availability") {
  Program p = parse("x := a + b; a := 1; y := a + b");
  Analysis a = analyze(p);
  const Stmt* x = findAssign(p, "x");
  const Stmt* y = findAssign(p, "y");
  // Not anticipated after x (a dies first), so never available there.
  CHECK(a.pre.antPost[x->id] == 0);
  CHECK(a.pre.cpavPost[x->id] == 0);
  CHECK(a.pre.cpavPre[y->id] == 0);
}

TEST_CASE("loop heads only keep what the body preserves") {
  // The body rewrites a after reading a + b, so availability cannot
  // survive the back edge even though the loop re-evaluates every round.
  Program p = parse(
      "q := a + b; i := 0; "
      "while i < 4 do { y := a + b; a := a + 1; i := i + 1 }; "
      "w := a + b");
  Analysis a = analyze(p);
  const Stmt* y = findAssign(p, "y");
  const Stmt* w = findAssign(p, "w");
  CHECK((a.pre.cpavPre[y->id] & a.universe.bit(kAb)) == 0);
  CHECK((a.pre.cpavPre[w->id] & a.universe.bit(kAb)) == 0);

  // An invariant expression does survive.
  Program inv = parse(
      "i := 0; while i < 4 do { q := a + b; i := i + 1 }; w := a + b");
  Analysis ia = analyze(inv);
  const Stmt* loop = nullptr;
  forEachNode(inv, [&](const Stmt& n) {
    if (std::get_if<While>(&n.node)) loop = &n;
  });
  REQUIRE(loop);
  CHECK(ia.universe.toSet(ia.pre.loopHeadCpav[loop->id]) ==
        std::set<ExprId>{kAb});
  const Stmt* w2 = findAssign(inv, "w");
  CHECK((ia.pre.cpavPre[w2->id] & ia.universe.bit(kAb)) != 0);
}

TEST_CASE("gating and blacklist invariants hold on random programs") {
  std::mt19937_64 rng(43);
  testgen::GenParams params;
  for (int i = 0; i < 200; ++i) {
    Program p = testgen::genProgram(rng, params);
    Analysis a = analyze(p);
    forEachNode(p, [&](const Stmt& n) {
      // cpav is a subset of ant at every point.
      CHECK((a.pre.cpavPre[n.id] & ~a.pre.antPre[n.id]) == 0);
      CHECK((a.pre.cpavPost[n.id] & ~a.pre.antPost[n.id]) == 0);
      // No set meets the node's blacklist.
      Mask banned = a.mce.at(n.id);
      CHECK((a.pre.antPre[n.id] & banned) == 0);
      CHECK((a.pre.antPost[n.id] & banned) == 0);
      CHECK((a.pre.cpavPre[n.id] & banned) == 0);
      CHECK((a.pre.cpavPost[n.id] & banned) == 0);
    });
  }
}

TEST_CASE("guards contribute nothing") {
  Program p = parse("if a <= b then { skip } else { skip }");
  Analysis a = analyze(p);
  CHECK(a.universe.size() == 0);
  forEachNode(p, [&](const Stmt& n) {
    CHECK(a.pre.antPre[n.id] == 0);
    CHECK(a.pre.cpavPost[n.id] == 0);
  });
}
