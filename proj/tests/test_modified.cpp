#include <doctest.h>

#include <random>

#include "fwhile/modified.hpp"
#include "fwhile/parser.hpp"
#include "support/gen.hpp"

using namespace fwhile;

namespace {

const char* kMotivating =
    "v := a - c; u := a + b; "
    "fork { { y := a + b; c := 2; z := a - c } { x := a + b; z := a - c } }";

struct Shape {
  Program p;
  NodeId fork;
  NodeId thread1, thread2;

  static Shape motivating() {
    Shape s{parse(kMotivating), 0, 0, 0};
    forEachNode(s.p, [&](const Stmt& n) {
      if (const auto* f = std::get_if<Fork>(&n.node)) {
        s.fork = n.id;
        s.thread1 = f->threads[0]->id;
        s.thread2 = f->threads[1]->id;
      }
    });
    return s;
  }
};

}  // namespace

TEST_CASE("modified analysis on the two-thread example") {
  Shape s = Shape::motivating();
  ModAnnotation ann = modifiedAnalysis(s.p);
  CHECK(ann.at(s.fork).pre == VarSet{"v", "u"});
  CHECK(ann.at(s.thread1).post == VarSet{"v", "u", "y", "c", "z"});
  CHECK(ann.at(s.thread2).post == VarSet{"v", "u", "x", "z"});
  CHECK(ann.at(s.fork).post == VarSet{"v", "u", "x", "y", "c", "z"});
}

TEST_CASE("skip and branch unification") {
  Program skip = parse("skip");
  ModAnnotation ann = modifiedAnalysis(skip, {"w"});
  CHECK(ann.at(skip.root->id).pre == VarSet{"w"});
  CHECK(ann.at(skip.root->id).post == VarSet{"w"});

  Program branch = parse("if b = 0 then { x := 1 } else { skip }");
  CHECK(modifiedAnalysis(branch).at(branch.root->id).post == VarSet{"x"});
}

TEST_CASE("every node satisfies post = pre + assignedVars") {
  std::mt19937_64 rng(31);
  testgen::GenParams params;
  for (int i = 0; i < 150; ++i) {
    Program p = testgen::genProgram(rng, params);
    ModAnnotation ann = modifiedAnalysis(p);
    forEachNode(p, [&](const Stmt& n) {
      VarSet expected = ann.at(n.id).pre;
      for (const auto& v : assignedVars(n)) expected.insert(v);
      CHECK(ann.at(n.id).post == expected);
      // Lemma 1.
      for (const auto& v : ann.at(n.id).pre) CHECK(ann.at(n.id).post.count(v));
    });
  }
}

TEST_CASE("entry set shifts through unchanged") {
  std::mt19937_64 rng(37);
  testgen::GenParams params;
  params.maxLeafStmts = 12;
  for (int i = 0; i < 80; ++i) {
    Program p = testgen::genProgram(rng, params);
    ModAnnotation base = modifiedAnalysis(p);
    VarSet k{"k1", "k2"};
    ModAnnotation shifted = modifiedAnalysis(p, k);
    forEachNode(p, [&](const Stmt& n) {
      VarSet pre = base.at(n.id).pre;
      pre.insert(k.begin(), k.end());
      VarSet post = base.at(n.id).post;
      post.insert(k.begin(), k.end());
      CHECK(shifted.at(n.id).pre == pre);
      CHECK(shifted.at(n.id).post == post);
    });
  }
}

TEST_CASE("subStatements covers nested structure reflexively") {
  Program p = parse("x := 1; if b = 0 then { y := 2 } else { skip }");
  const auto& seq = std::get<Seq>(p.root->node);
  auto all = subStatements(*p.root);
  CHECK(all.size() == nodeCount(p));
  CHECK(all.count(p.root->id));

  auto ifOnly = subStatements(*seq.second);
  CHECK(ifOnly.size() == 3);  // if node and both branches
  CHECK_FALSE(ifOnly.count(seq.first->id));

  Program s = parse("skip");
  CHECK(subStatements(*s.root) == std::set<NodeId>{s.root->id});
}

TEST_CASE("concurrent-modified on the two-thread example") {
  Shape s = Shape::motivating();
  ModAnnotation ann = modifiedAnalysis(s.p);
  ConcMap cmap = concurrentModified(s.p, ann);

  const Fork* fork = nullptr;
  forEachNode(s.p, [&](const Stmt& n) {
    if (n.id == s.fork) fork = std::get_if<Fork>(&n.node);
  });
  REQUIRE(fork);
  auto inThread1 = subStatements(*fork->threads[0]);
  auto inThread2 = subStatements(*fork->threads[1]);

  forEachNode(s.p, [&](const Stmt& n) {
    if (inThread1.count(n.id)) {
      CHECK(cmap.at(n.id) == VarSet{"x", "z"});
    } else if (inThread2.count(n.id)) {
      CHECK(cmap.at(n.id) == VarSet{"y", "c", "z"});
    } else {
      CHECK(cmap.at(n.id).empty());
    }
  });
}

TEST_CASE("pre-fork assignments never blacklist") {
  // v and u are written before the fork; they must not show up in C even
  // though every thread's post-set contains them.
  Shape s = Shape::motivating();
  ConcMap cmap = concurrentModified(s.p, modifiedAnalysis(s.p));
  CHECK_FALSE(cmap.at(s.thread1).count("v"));
  CHECK_FALSE(cmap.at(s.thread1).count("u"));
}

TEST_CASE("single-thread fork has an empty C") {
  Program p = parse("fork { { x := 1 } }");
  ConcMap cmap = concurrentModified(p, modifiedAnalysis(p));
  forEachNode(p, [&](const Stmt& n) { CHECK(cmap.at(n.id).empty()); });
}

TEST_CASE("nested forks accumulate sibling sets") {
  Program p = parse(
      "fork { "
      "{ fork { { x := 1 } { y := 2 } } } "
      "{ z := 3 } }");
  ConcMap cmap = concurrentModified(p, modifiedAnalysis(p));
  const Stmt* xAssign = nullptr;
  forEachNode(p, [&](const Stmt& n) {
    if (const auto* a = std::get_if<Assign>(&n.node); a && a->var == "x") {
      xAssign = &n;
    }
  });
  REQUIRE(xAssign);
  // Outer sibling writes z, inner sibling writes y.
  CHECK(cmap.at(xAssign->id) == VarSet{"y", "z"});
}

TEST_CASE("C equals the union of sibling assignedVars") {
  std::mt19937_64 rng(41);
  testgen::GenParams params;
  for (int i = 0; i < 100; ++i) {
    Program p = testgen::genProgram(rng, params);
    ModAnnotation ann = modifiedAnalysis(p);
    ConcMap cmap = concurrentModified(p, ann);
    forEachNode(p, [&](const Stmt& n) {
      const auto* fork = std::get_if<Fork>(&n.node);
      if (!fork) return;
      const VarSet& inherited = cmap.at(n.id);
      for (std::size_t i1 = 0; i1 < fork->threads.size(); ++i1) {
        VarSet expected = inherited;
        for (std::size_t j = 0; j < fork->threads.size(); ++j) {
          if (j == i1) continue;
          for (const auto& v : assignedVars(*fork->threads[j])) {
            expected.insert(v);
          }
        }
        CHECK(cmap.at(fork->threads[i1]->id) == expected);
      }
    });
  }
}

TEST_CASE("mod and mce from the worked example") {
  ExprId sub{AOp::Sub, Literal::var("a"), Literal::var("c")};
  ExprId add{AOp::Add, Literal::var("a"), Literal::var("b")};
  std::set<ExprId> universe{sub, add};

  CHECK(modSet("c", universe) == std::set<ExprId>{sub});
  CHECK(modSet("q", universe).empty());
  CHECK(modSet("a", universe) == universe);

  Shape s = Shape::motivating();
  ConcMap cmap = concurrentModified(s.p, modifiedAnalysis(s.p));
  CHECK(mce(s.thread2, cmap, universe) == std::set<ExprId>{sub});
  CHECK(mce(s.thread1, cmap, universe).empty());
  CHECK(mce(s.p.root->id, cmap, universe).empty());
}
