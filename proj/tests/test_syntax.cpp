#include <doctest.h>

#include <random>

#include "fwhile/parser.hpp"
#include "fwhile/printer.hpp"
#include "fwhile/syntax.hpp"
#include "support/gen.hpp"

using namespace fwhile;

namespace {

const char* kMotivating = R"(
v := a - c; u := a + b;
fork { { y := a + b; c := 2; z := a - c } { x := a + b; z := a - c } }
)";

AExpr plus(const char* l, const char* r) {
  return AExpr::bin(AOp::Add, Literal::var(l), Literal::var(r));
}

}  // namespace

TEST_CASE("freeVars collects expression variables") {
  CHECK(freeVars(plus("a", "b")) == std::set<std::string>{"a", "b"});
  CHECK(freeVars(AExpr::bin(AOp::Mul, Literal::num(5), Literal::num(7)))
            .empty());
  CHECK(freeVars(BExpr{BOp::Le, Literal::var("x"), Literal::var("x")}) ==
        std::set<std::string>{"x"});
}

TEST_CASE("evalSet is the singleton for binary nodes only") {
  CHECK(evalSet(plus("a", "b")) ==
        std::set<ExprId>{ExprId{AOp::Add, Literal::var("a"), Literal::var("b")}});
  CHECK(evalSet(AExpr::lit(Literal::num(7))).empty());
  CHECK(evalSet(AExpr::lit(Literal::var("x"))).empty());
}

TEST_CASE("nontrivialExprs walks assignment right-hand sides") {
  Program p = parse(kMotivating);
  ExprUniverse u = nontrivialExprs(p);
  CHECK(u.size() == 2);
  CHECK(u.contains(ExprId{AOp::Sub, Literal::var("a"), Literal::var("c")}));
  CHECK(u.contains(ExprId{AOp::Add, Literal::var("a"), Literal::var("b")}));

  CHECK(nontrivialExprs(parse("skip")).size() == 0);

  ExprUniverse u2 = nontrivialExprs(parse("x := 1; y := x + x"));
  CHECK(u2.size() == 1);
  CHECK(u2.contains(ExprId{AOp::Add, Literal::var("x"), Literal::var("x")}));
}

TEST_CASE("assignedVars descends every construct") {
  Program p = parse(kMotivating);
  const auto& fork = std::get<Fork>(
      std::get<Seq>(std::get<Seq>(p.root->node).second->node).second->node);
  CHECK(assignedVars(*fork.threads[0]) ==
        std::set<std::string>{"y", "c", "z"});
  CHECK(assignedVars(*parse("skip").root).empty());
  CHECK(assignedVars(
            *parse("if b < 1 then { x := 1 } else { while b < 1 do { y := 2 } }")
                 .root) == std::set<std::string>{"x", "y"});
}

TEST_CASE("ExprId equality is structural, no commutation") {
  ExprId ab{AOp::Add, Literal::var("a"), Literal::var("b")};
  ExprId ba{AOp::Add, Literal::var("b"), Literal::var("a")};
  CHECK(ab == ab);
  CHECK(ab != ba);
  CHECK(*exprIdOf(toAExpr(ab)) == ab);
  CHECK(exprIdOf(AExpr::lit(Literal::var("a"))) == std::nullopt);
}

TEST_CASE("ExprId equality matches structural equality on random exprs") {
  std::mt19937_64 rng(11);
  auto randomLiteral = [&]() {
    return rng() % 2 ? Literal::var(std::string(1, static_cast<char>(
                           'a' + rng() % 4)))
                     : Literal::num(static_cast<std::int64_t>(rng() % 5));
  };
  for (int i = 0; i < 500; ++i) {
    AExpr x = AExpr::bin(static_cast<AOp>(rng() % 3), randomLiteral(),
                         randomLiteral());
    AExpr y = AExpr::bin(static_cast<AOp>(rng() % 3), randomLiteral(),
                         randomLiteral());
    CHECK((exprIdOf(x) == exprIdOf(y)) == (x == y));
  }
}

TEST_CASE("node ids are unique after parsing and generation") {
  CHECK(hasUniqueIds(parse(kMotivating)));
  std::mt19937_64 rng(3);
  testgen::GenParams params;
  for (int i = 0; i < 50; ++i) {
    Program p = testgen::genProgram(rng, params);
    CHECK(hasUniqueIds(p));
  }
}

TEST_CASE("universe caps at 64 distinct expressions") {
  std::string big;
  for (int i = 0; i < 70; ++i) {
    big += "x := a + " + std::to_string(i) + ";\n";
  }
  Program p = parse(big);
  CHECK_THROWS_AS(nontrivialExprs(p), std::length_error);
}
