#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/mini_java.hpp"

using namespace codeview;

namespace {

/// Rebuilds the input from leaf slices plus the whitespace gaps between
/// them; asserts the gaps really are whitespace-only.
std::string reconstruct(const Cst& cst) {
  std::string out;
  uint32_t prev_end = 0;
  bool ok = true;
  auto visit = [&](auto&& self, int id) -> void {
    const CstNode& n = cst.node(id);
    if (n.children.empty()) {
      if (n.span.start < prev_end) {
        ok = false;
        return;
      }
      std::string_view gap = cst.slice(Span{prev_end, n.span.start});
      for (char c : gap) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') ok = false;
      }
      out += gap;
      out += cst.slice(id);
      prev_end = n.span.end;
      return;
    }
    for (int c : n.children) self(self, c);
  };
  visit(visit, cst.root());
  REQUIRE(ok);
  std::string_view tail =
      cst.slice(Span{prev_end, static_cast<uint32_t>(cst.text().size())});
  out += tail;
  return out;
}

void check_span_nesting(const Cst& cst, int id) {
  const CstNode& n = cst.node(id);
  uint32_t prev_start = n.span.start;
  for (int c : cst.node(id).children) {
    CHECK(n.span.contains(cst.node(c).span));
    CHECK(cst.node(c).span.start >= prev_start);
    prev_start = cst.node(c).span.start;
    check_span_nesting(cst, c);
  }
}

}  // namespace

TEST_CASE("well-formed class parses without errors") {
  SourceUnit unit;
  unit.text = "class A { }";
  Cst cst = parse_source(unit);
  CHECK_FALSE(cst.has_error());
  auto top = cst.named_children(cst.root());
  REQUIRE(top.size() == 1);
  CHECK(cst.node(top[0]).kind == "class_declaration");
}

TEST_CASE("missing semicolon raises a syntax error at the offending span") {
  SourceUnit unit;
  unit.text = "int f(){return 1}";
  CHECK_THROWS_AS(parse_source(unit), SyntaxError);
  try {
    parse_source(unit);
  } catch (const SyntaxError& e) {
    // The grammar inserts a zero-width missing ";" right before the brace
    // at byte 16.
    CHECK(e.span().start == 16);
    CHECK(e.span().end == 16);
  }
}

TEST_CASE("multi-class program yields three top-level type declarations") {
  auto u = cvtest::make_unit(R"(
class ClassA {
  int x;
}
class ClassB {
  int y;
  ClassB(int v) { this.y = v; }
}
class Main {
  public static void main(String[] args) {
    ClassA a = new ClassA();
    ClassB b = new ClassB(1);
  }
}
)");
  CHECK_FALSE(u->cst.has_error());
  int types = 0;
  for (int c : u->cst.named_children(u->cst.root())) {
    if (u->cst.node(c).kind == "class_declaration") ++types;
  }
  CHECK(types == 3);
}

TEST_CASE("empty input is rejected") {
  SourceUnit unit;
  unit.text = "   \n\t ";
  CHECK_THROWS_AS(parse_source(unit), EmptyInputError);
  CHECK_THROWS_AS(normalize_snippet(unit), EmptyInputError);
}

TEST_CASE("invalid UTF-8 is rejected up front") {
  SourceUnit unit;
  unit.text = "class A { \xFF }";
  CHECK_THROWS_AS(parse_source(unit), SyntaxError);
}

TEST_CASE("normalization leaves program-level input untouched") {
  SourceUnit unit;
  unit.text = "class A { }";
  SourceUnit norm = normalize_snippet(unit);
  CHECK_FALSE(norm.synthetic_wrapper);
  CHECK(norm.wrapper == WrapperKind::None);
  CHECK(norm.text == unit.text);
}

TEST_CASE("bare method parses under this grammar without a wrapper") {
  SourceUnit unit;
  unit.text = "int add(int a,int b){return a+b;}";
  SourceUnit norm = normalize_snippet(unit);
  // The grammar accepts bare members at top level, so the retry wrapper
  // never fires for plain methods.
  CHECK_FALSE(norm.synthetic_wrapper);
  Cst cst = parse_source(norm);
  CHECK_FALSE(cst.has_error());
}

TEST_CASE("forced wrapping reports spans relative to the original text") {
  SourceUnit unit;
  unit.text = "int add(int a,int b){return a+b;}";
  SourceUnit norm = normalize_snippet(unit, /*force_wrap=*/true);
  CHECK(norm.synthetic_wrapper);
  CHECK(norm.wrapper == WrapperKind::TypeShell);
  Cst cst = parse_source(norm);
  CHECK_FALSE(cst.has_error());
  CHECK(cst.node(cst.root()).span == Span{0, static_cast<uint32_t>(unit.text.size())});
  auto members = cst.named_children(cst.root());
  REQUIRE(members.size() == 1);
  CHECK(cst.node(members[0]).kind == "method_declaration");
  CHECK(cst.node(members[0]).span.start == 0);
  CHECK(cst.node(members[0]).span.end == unit.text.size());
  CHECK(reconstruct(cst) == unit.text);
}

TEST_CASE("constructor-only snippet needs the type shell") {
  SourceUnit unit;
  unit.text = "Worker(int id) { this.id = id; }";
  SourceUnit norm = normalize_snippet(unit);
  CHECK(norm.synthetic_wrapper);
  Cst cst = parse_source(norm);
  CHECK_FALSE(cst.has_error());
  auto members = cst.named_children(cst.root());
  REQUIRE(members.size() == 1);
  CHECK(cst.node(members[0]).kind == "constructor_declaration");
}

TEST_CASE("irrecoverable snippet fails in every wrapping") {
  SourceUnit unit;
  unit.text = "int f({";
  CHECK_THROWS_AS(normalize_snippet(unit), SyntaxError);
  CHECK_THROWS_AS(normalize_snippet(unit, /*force_wrap=*/true), SyntaxError);
}

TEST_CASE("round-trip and span nesting hold over generated programs") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 50; ++i) {
    cvtest::MiniProgram program = cvtest::generate_mini_program(rng);
    SourceUnit unit;
    unit.text = program.source;
    Cst cst = parse_source(unit);
    CHECK(reconstruct(cst) == program.source);
    check_span_nesting(cst, cst.root());
    for (int id = 0; id < cst.size(); ++id) {
      CHECK_FALSE(cst.node(id).kind.empty());
    }
  }
  for (int i = 0; i < 50; ++i) {
    std::string snippet = cvtest::generate_rich_snippet(rng);
    SourceUnit unit;
    unit.text = snippet;
    SourceUnit norm = normalize_snippet(unit);
    Cst cst = parse_source(norm);
    check_span_nesting(cst, cst.root());
  }
}

TEST_CASE("identical bytes produce structurally identical trees") {
  std::string text = "class A { void f() { int x = 1; x = x + 2; } }";
  SourceUnit unit;
  unit.text = text;
  Cst a = parse_source(unit);
  Cst b = parse_source(unit);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) {
    CHECK(a.node(i).kind == b.node(i).kind);
    CHECK(a.node(i).span == b.node(i).span);
    CHECK(a.node(i).children == b.node(i).children);
  }
}
