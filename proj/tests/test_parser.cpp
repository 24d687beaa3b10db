#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fwhile/parser.hpp"
#include "fwhile/printer.hpp"
#include "support/gen.hpp"

using namespace fwhile;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("parses the two-thread example into the expected shape") {
  Program p = parse(
      "v := a - c; u := a + b; "
      "fork { { y := a + b; c := 2; z := a - c } { x := a + b; z := a - c } }");
  // Seq(v, Seq(u, fork))
  const auto& top = std::get<Seq>(p.root->node);
  const auto& v = std::get<Assign>(top.first->node);
  CHECK(v.var == "v");
  CHECK(v.rhs == AExpr::bin(AOp::Sub, Literal::var("a"), Literal::var("c")));
  const auto& rest = std::get<Seq>(top.second->node);
  CHECK(std::get<Assign>(rest.first->node).var == "u");
  const auto& fork = std::get<Fork>(rest.second->node);
  REQUIRE(fork.threads.size() == 2);
  const auto& t1 = std::get<Seq>(fork.threads[0]->node);
  CHECK(std::get<Assign>(t1.first->node).var == "y");
}

TEST_CASE("parses trivial and rejects truncated input") {
  CHECK(std::holds_alternative<Skip>(parse("skip").root->node));
  CHECK_THROWS_AS(parse("x := a + "), ParseError);
  CHECK_THROWS_AS(parse("x := "), ParseError);
  CHECK_THROWS_AS(parse("if x = 1 then { skip }"), ParseError);  // no else
  CHECK_THROWS_AS(parse("fork { }"), ParseError);                // no threads
  CHECK_THROWS_AS(parse("x = 1"), ParseError);                   // not :=
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("comments and trailing separators are accepted") {
  Program p = parse("// header\nx := 1; // inline\ny := 2;\n");
  CHECK(nodeCount(p) == 3);
  Program q = parse("fork { { skip }; { skip }; }");
  CHECK(std::get<Fork>(q.root->node).threads.size() == 2);
}

TEST_CASE("negative literals parse in operand position") {
  Program p = parse("x := -5; y := x - -3");
  const auto& top = std::get<Seq>(p.root->node);
  CHECK(std::get<Assign>(top.first->node).rhs ==
        AExpr::lit(Literal::num(-5)));
  CHECK(std::get<Assign>(top.second->node).rhs ==
        AExpr::bin(AOp::Sub, Literal::var("x"), Literal::num(-3)));
}

TEST_CASE("parse errors carry usable positions") {
  try {
    parse("x := a +\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    auto [line, col] = lineColOf("x := a +\n", err.span().begin);
    CHECK(line == 2);
    CHECK(std::string(err.what()).find("expected") != std::string::npos);
  }
}

TEST_CASE("round-trip on random programs") {
  std::mt19937_64 rng(17);
  testgen::GenParams params;
  for (int i = 0; i < 300; ++i) {
    Program p = testgen::genProgram(rng, params);
    Program q = parse(prettyPrint(p));
    CHECK(structurallyEqual(p, q));
  }
}

TEST_CASE("round-trip and determinism on the corpus") {
  for (const auto& entry : std::filesystem::directory_iterator(CORPUS_DIR)) {
    if (entry.path().extension() != ".fw") continue;
    CAPTURE(entry.path().string());
    std::string source = slurp(entry.path());
    Program p = parse(source);
    Program q = parse(prettyPrint(p));
    CHECK(structurallyEqual(p, q));
    CHECK(prettyPrint(p) == prettyPrint(parse(source)));
  }
}

TEST_CASE("spans nest within their parents") {
  std::string src = "if x <= y then { a := 1; b := 2 } else { skip }";
  Program p = parse(src);
  const Stmt& root = *p.root;
  forEachNode(p, [&](const Stmt& s) {
    CHECK(s.span.begin <= s.span.end);
    CHECK(s.span.begin >= root.span.begin);
    CHECK(s.span.end <= root.span.end);
  });
}
