#include <doctest.h>

#include <random>

#include "fwhile/oracle.hpp"
#include "fwhile/parser.hpp"
#include "fwhile/pre_analysis.hpp"
#include "fwhile/printer.hpp"
#include "support/gen.hpp"

using namespace fwhile;

namespace {

const char* kMotivating =
    "v := a - c; u := a + b; "
    "fork { { y := a + b; c := 2; z := a - c } { x := a + b; z := a - c } }";

const ExprId kAb{AOp::Add, Literal::var("a"), Literal::var("b")};

struct OracleRun {
  Program p;
  Analysis a;
  oracle::Paths paths;
  oracle::PointTables tables;

  explicit OracleRun(Program prog) : p(std::move(prog)), a(analyze(p)) {
    paths = oracle::enumeratePaths(p, a.universe);
    tables = oracle::compute(paths, a.mce, a.universe);
  }
};

}  // namespace

TEST_CASE("path counts") {
  auto countPaths = [](const char* src) {
    Program p = parse(src);
    ExprUniverse u = nontrivialExprs(p);
    return oracle::enumeratePaths(p, u).count();
  };
  CHECK(countPaths("a := 1; b := 2; c := a + b") == 1);
  CHECK(countPaths("if a = 0 then { x := 1 } else { y := 2 }") == 2);
  CHECK(countPaths(kMotivating) == 2);
  CHECK(countPaths("if a = 0 then { x := 1 } else { skip };"
                   "fork { { skip } { skip } { skip } }") == 12);
}

TEST_CASE("loops and oversized forks are rejected") {
  auto tryPaths = [](const char* src) {
    Program p = parse(src);
    ExprUniverse u = nontrivialExprs(p);
    oracle::enumeratePaths(p, u);
  };
  CHECK_THROWS_AS(tryPaths("while a < 1 do { skip }"),
                  oracle::PathBoundError);
  CHECK_THROWS_AS(
      tryPaths("fork { { skip } { skip } { skip } { skip } { skip } }"),
      oracle::PathBoundError);
}

TEST_CASE("oracle values from the worked examples") {
  SUBCASE("nothing is anticipated after the last statement") {
    OracleRun r{parse("x := a + b")};
    CHECK(r.tables.antPost[r.p.root->id] == 0);
  }
  SUBCASE("straight-line availability before the redundant read") {
    OracleRun r{parse("x := a + b; y := a + b")};
    const Stmt* y = nullptr;
    forEachNode(r.p, [&](const Stmt& n) {
      const auto* asg = std::get_if<Assign>(&n.node);
      if (asg && asg->var == "y") y = &n;
    });
    REQUIRE(y);
    CHECK(r.a.universe.toSet(r.tables.cpavPre[y->id]) ==
          std::set<ExprId>{kAb});
  }
  SUBCASE("fork entry anticipates only the shareable expression") {
    OracleRun r{parse(kMotivating)};
    NodeId fork = forkNodes(r.p)[0].first;
    CHECK(r.a.universe.toSet(r.tables.antPre[fork]) == std::set<ExprId>{kAb});
  }
}

TEST_CASE("oracle agrees with the analyses on loop-free programs") {
  std::mt19937_64 rng(47);
  testgen::GenParams params;
  params.loopFree = true;
  params.maxLeafStmts = 12;
  for (int i = 0; i < 150; ++i) {
    Program p = testgen::genProgram(rng, params);
    OracleRun r{cloneProgram(p)};
    bool same = true;
    forEachNode(r.p, [&](const Stmt& n) {
      same = same && r.tables.antPre[n.id] == r.a.pre.antPre[n.id] &&
             r.tables.antPost[n.id] == r.a.pre.antPost[n.id] &&
             r.tables.cpavPre[n.id] == r.a.pre.cpavPre[n.id] &&
             r.tables.cpavPost[n.id] == r.a.pre.cpavPost[n.id];
    });
    if (!same) {
      CAPTURE(prettyPrint(r.p));
      forEachNode(r.p, [&](const Stmt& n) {
        CAPTURE(n.id);
        CHECK(r.tables.antPre[n.id] == r.a.pre.antPre[n.id]);
        CHECK(r.tables.antPost[n.id] == r.a.pre.antPost[n.id]);
        CHECK(r.tables.cpavPre[n.id] == r.a.pre.cpavPre[n.id]);
        CHECK(r.tables.cpavPost[n.id] == r.a.pre.cpavPost[n.id]);
      });
    }
    CHECK(same);
  }
}
