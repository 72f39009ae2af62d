#include "cfgsim/minilang.hpp"

#include "catch_amalgamated.hpp"
#include "cfgsim/cfg_build.hpp"

using cfgsim::LabeledCfg;
using cfgsim::MiniProgram;
using cfgsim::Stmt;

static LabeledCfg cfg_of(const std::string& src) {
  return cfgsim::program_to_cfg({"test", src});
}

TEST_CASE("parser: single assignment statement") {
  auto fn = cfgsim::parse_program({"t", "int f(int sum) { sum = 0; return sum; }"});
  REQUIRE(fn.body.size() == 2);
  CHECK(fn.body[0]->kind == Stmt::Kind::assign);
  CHECK(fn.body[0]->name == "sum");
  CHECK(fn.body[1]->kind == Stmt::Kind::return_);
  CHECK(fn.statement_count == 2);
}

TEST_CASE("parser: while loop with one body statement") {
  auto fn = cfgsim::parse_program(
      {"t", "int f(int i, int n) { while (i < n) { i = i + 1; } return i; }"});
  REQUIRE(fn.body.size() == 2);
  CHECK(fn.body[0]->kind == Stmt::Kind::while_);
  CHECK(fn.body[0]->body.size() == 1);
}

TEST_CASE("parser: missing expression is a positioned error") {
  try {
    cfgsim::parse_program({"t", "int f(int x) {\n  x = ;\n  return x;\n}"});
    FAIL("expected ParseError");
  } catch (const cfgsim::ParseError& ex) {
    CHECK(ex.line() == 2);
    CHECK(std::string(ex.what()).find("expression") != std::string::npos);
  }
}

TEST_CASE("parser: rejects trailing input and duplicate parameters") {
  CHECK_THROWS_AS(
      cfgsim::parse_program({"t", "int f() { return 0; } int g() { return 1; }"}),
      cfgsim::ParseError);
  CHECK_THROWS_AS(cfgsim::parse_program({"t", "int f(int a, int a) { return a; }"}),
                  cfgsim::ParseError);
}

TEST_CASE("parser: bitwise operators share one precedence level") {
  // left-assoc single level: a | b & c lowers as (a | b) & c
  auto g = cfg_of("int f(int a, int b, int c) { int x = a | b & c; return x; }");
  REQUIRE(g.node_count() == 3);
  CHECK(g.labels[0] == "$t0 = a | b");
  CHECK(g.labels[1] == "x = $t0 & c");
}

TEST_CASE("parser: relational binds tighter than bitwise") {
  auto g = cfg_of("int f(int j, int k) { int x = j >= 0 & k < 3; return x; }");
  REQUIRE(g.node_count() == 4);
  CHECK(g.labels[0] == "$t0 = j >= 0");
  CHECK(g.labels[1] == "$t1 = k < 3");
  CHECK(g.labels[2] == "x = $t0 & $t1");
}

TEST_CASE("parser: negative literals") {
  auto g = cfg_of("int f() { int x = -1; return x; }");
  CHECK(g.labels[0] == "x = -1");
}

TEST_CASE("lexer: unexpected character is a positioned error") {
  try {
    cfgsim::lex("int f() {\n  @\n}");
    FAIL("expected ParseError");
  } catch (const cfgsim::ParseError& ex) {
    CHECK(ex.line() == 2);
  }
}

TEST_CASE("lexer: comments are skipped") {
  auto g = cfg_of("int f() {\n  // setup\n  int x = 1;\n  return x;\n}");
  CHECK(g.labels[0] == "x = 1");
}
