#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/mini_java.hpp"

using namespace codeview;
using cvtest::EdgeTriple;

namespace {

bool has_triple(const std::multiset<EdgeTriple>& edges, const std::string& src,
                const std::string& dst, const std::string& kind) {
  return edges.count({src, dst, kind}) > 0;
}

}  // namespace

TEST_CASE("empty body: entry connects straight to exit") {
  auto b = cvtest::make_cfg("class A { void f(){} }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  REQUIRE(b.cfg.callables.size() == 1);
  CHECK(edges.size() == 1);
  CHECK(has_triple(edges, "entry f", "exit f", "next"));
}

TEST_CASE("if-else golden edge set") {
  auto b = cvtest::make_cfg(
      "class A { void f(int c) { if (c > 0) x = 1; else x = 2; y = 3; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "entry f", "if (c > 0)", "next"));
  CHECK(has_triple(edges, "if (c > 0)", "x = 1;", "true"));
  CHECK(has_triple(edges, "if (c > 0)", "x = 2;", "false"));
  CHECK(has_triple(edges, "x = 1;", "y = 3;", "next"));
  CHECK(has_triple(edges, "x = 2;", "y = 3;", "next"));
  CHECK(has_triple(edges, "y = 3;", "exit f", "next"));
  CHECK(edges.size() == 6);
}

TEST_CASE("if without else falls through on false") {
  auto b = cvtest::make_cfg("class A { void f(int c) { if (c > 0) x = 1; y = 2; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "if (c > 0)", "x = 1;", "true"));
  CHECK(has_triple(edges, "if (c > 0)", "y = 2;", "false"));
  CHECK(has_triple(edges, "x = 1;", "y = 2;", "next"));
}

TEST_CASE("while loop golden edge set") {
  auto b = cvtest::make_cfg(
      "class A { void f(int c, int x) { while (c > 0) { x = x + 1; } r = x; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "entry f", "while (c > 0)", "next"));
  CHECK(has_triple(edges, "while (c > 0)", "x = x + 1;", "true"));
  CHECK(has_triple(edges, "x = x + 1;", "while (c > 0)", "loop_back"));
  CHECK(has_triple(edges, "while (c > 0)", "r = x;", "false"));
  CHECK(has_triple(edges, "r = x;", "exit f", "next"));
  CHECK(edges.size() == 5);
}

TEST_CASE("do-while tests the condition after the body") {
  auto b = cvtest::make_cfg(
      "class A { void f(int x) { do { x = x + 1; } while (x < 3); r = x; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  // Control enters the body directly, the header test comes after it.
  CHECK(has_triple(edges, "entry f", "x = x + 1;", "next"));
  CHECK(has_triple(edges, "x = x + 1;", "do while (x < 3)", "loop_back"));
  CHECK(has_triple(edges, "do while (x < 3)", "x = x + 1;", "true"));
  CHECK(has_triple(edges, "do while (x < 3)", "r = x;", "false"));
}

TEST_CASE("for loop header owns init, condition and update") {
  auto b = cvtest::make_cfg(
      "class A { void f(int n) { for (int i = 0; i < n; i++) { s = s + i; } } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "for (int i = 0; i < n; i++)", "s = s + i;", "true"));
  CHECK(has_triple(edges, "s = s + i;", "for (int i = 0; i < n; i++)", "loop_back"));
  CHECK(has_triple(edges, "for (int i = 0; i < n; i++)", "exit f", "false"));
}

TEST_CASE("break and continue target loop exit and loop header") {
  auto b = cvtest::make_cfg(
      "class A { void f(int c) { while (c > 0) { if (c > 9) break; continue; } r = 1; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "if (c > 9)", "break;", "true"));
  CHECK(has_triple(edges, "break;", "r = 1;", "next"));
  CHECK(has_triple(edges, "if (c > 9)", "continue;", "false"));
  CHECK(has_triple(edges, "continue;", "while (c > 0)", "loop_back"));
}

TEST_CASE("labeled break leaves the labeled loop") {
  auto b = cvtest::make_cfg(
      "class A { void f() {\n"
      "outer: while (a > 0) { while (b > 0) { break outer; } }\n"
      "r = 1; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "break outer;", "r = 1;", "next"));
}

TEST_CASE("switch fans out over labels with fall-through between groups") {
  auto b = cvtest::make_cfg(
      "class A { void f(int x) { switch (x) { case 1: a = 1; case 2: b = 2; break; default: c = 3; } r = 4; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "switch (x)", "case 1", "switch_case"));
  CHECK(has_triple(edges, "switch (x)", "case 2", "switch_case"));
  CHECK(has_triple(edges, "switch (x)", "default", "switch_case"));
  CHECK(has_triple(edges, "case 1", "a = 1;", "next"));
  // fall-through from group 1 into the label of group 2
  CHECK(has_triple(edges, "a = 1;", "case 2", "next"));
  CHECK(has_triple(edges, "case 2", "b = 2;", "next"));
  CHECK(has_triple(edges, "b = 2;", "break;", "next"));
  CHECK(has_triple(edges, "break;", "r = 4;", "next"));
  CHECK(has_triple(edges, "default", "c = 3;", "next"));
  CHECK(has_triple(edges, "c = 3;", "r = 4;", "next"));
}

TEST_CASE("switch without default can bypass every case") {
  auto b = cvtest::make_cfg(
      "class A { void f(int x) { switch (x) { case 1: a = 1; break; } r = 2; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "switch (x)", "r = 2;", "next"));
}

TEST_CASE("return connects to the method exit and ends the flow") {
  auto b = cvtest::make_cfg(
      "class A { int f(int c) { if (c > 0) { return 1; } r = 2; return 3; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "return 1;", "exit f", "next"));
  CHECK(has_triple(edges, "return 3;", "exit f", "next"));
  CHECK(has_triple(edges, "if (c > 0)", "r = 2;", "false"));
  CHECK_FALSE(has_triple(edges, "return 1;", "r = 2;", "next"));
}

TEST_CASE("unreachable statements still get nodes") {
  auto b = cvtest::make_cfg("class A { int f() { return 1; dead = 2; } }");
  CHECK(cvtest::node_by_label(b.cfg.graph, "dead = 2;") >= 0);
  // No incoming control flow.
  int dead = cvtest::node_by_label(b.cfg.graph, "dead = 2;");
  for (const GraphEdge& e : b.cfg.graph.edges) CHECK(e.dst != dead);
}

TEST_CASE("try/catch/finally is approximated sequentially") {
  auto b = cvtest::make_cfg(
      "class A { void f() { try { risky(); } catch (Exception e) { handle(e); } finally { done(); } r = 1; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "risky();", "catch (Exception e)", "next"));
  CHECK(has_triple(edges, "catch (Exception e)", "handle(e);", "next"));
  CHECK(has_triple(edges, "handle(e);", "done();", "next"));
  // the one modeled exceptional path: start of try body -> finally
  CHECK(has_triple(edges, "risky();", "done();", "next"));
  CHECK(has_triple(edges, "done();", "r = 1;", "next"));
}

TEST_CASE("throw jumps to the method exit") {
  auto b = cvtest::make_cfg(
      "class A { void f() { throw new IllegalStateException(); r = 1; } }");
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "throw new IllegalStateException();", "exit f", "next"));
  int dead = cvtest::node_by_label(b.cfg.graph, "r = 1;");
  for (const GraphEdge& e : b.cfg.graph.edges) CHECK(e.dst != dead);
}

TEST_CASE("every method contributes exactly one entry and one exit") {
  std::mt19937 rng(23);
  for (int i = 0; i < 30; ++i) {
    auto b = cvtest::make_cfg(cvtest::generate_rich_snippet(rng));
    for (const CfgCallable& c : b.cfg.callables) {
      CHECK(b.cfg.graph.has_node(c.entry));
      CHECK(b.cfg.graph.has_node(c.exit));
      const GraphNode& entry = b.cfg.graph.nodes.at(c.entry);
      CHECK((entry.kind == "method_entry" || entry.kind == "constructor_entry"));
      CHECK(b.cfg.graph.nodes.at(c.exit).kind == "method_exit");
    }
  }
}

TEST_CASE("branch headers have exactly one true and one false edge") {
  std::mt19937 rng(29);
  for (int i = 0; i < 40; ++i) {
    cvtest::MiniProgram p = cvtest::generate_mini_program(rng);
    auto b = cvtest::make_cfg(p.source);
    std::map<int, int> true_out, false_out;
    for (const GraphEdge& e : b.cfg.graph.edges) {
      if (e.kind == EdgeKind::True) ++true_out[e.src];
      if (e.kind == EdgeKind::False) ++false_out[e.src];
    }
    for (const auto& [id, node] : b.cfg.graph.nodes) {
      if (node.kind == "if_header" || node.kind == "loop_header") {
        CHECK(true_out[id] == 1);
        CHECK(false_out[id] == 1);
      }
    }
  }
}

TEST_CASE("non-entry nodes are reachable, non-exit nodes have successors") {
  std::mt19937 rng(31);
  for (int i = 0; i < 40; ++i) {
    cvtest::MiniProgram p = cvtest::generate_mini_program(rng);
    auto b = cvtest::make_cfg(p.source);
    std::set<int> has_in, has_out;
    for (const GraphEdge& e : b.cfg.graph.edges) {
      has_in.insert(e.dst);
      has_out.insert(e.src);
    }
    for (const CfgCallable& c : b.cfg.callables) {
      for (int s : c.statements) {
        CHECK(has_in.count(s));   // mini programs have no dead code
        CHECK(has_out.count(s));
      }
      CHECK(has_out.count(c.entry));
      CHECK(has_in.count(c.exit));
    }
  }
}

// ---- inter-procedural ----------------------------------------------------

namespace {

std::string fig2_program() {
  return R"(class ClassA {
  int x;
}
class ClassB {
  int y;
  ClassB(int v) {
    y = v;
  }
}
class Main {
  public static void main(String[] args) {
    ClassA a = new ClassA();
    ClassB b = new ClassB(1);
  }
}
)";
}

}  // namespace

TEST_CASE("object instantiation links to type declaration or constructor") {
  auto b = cvtest::make_cfg(fig2_program(), /*interprocedural=*/true);
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);

  // Constructor-less class: edge into the type declaration node.
  CHECK(has_triple(edges, "ClassA a = new ClassA();", "class ClassA",
                   "constructor_call"));
  // Explicit constructor: edge into its entry, return from its tail.
  CHECK(has_triple(edges, "ClassB b = new ClassB(1);", "entry ClassB",
                   "constructor_call"));
  CHECK(has_triple(edges, "y = v;", "ClassB b = new ClassB(1);", "class_return"));

  int constructor_calls = 0;
  int class_returns = 0;
  for (const GraphEdge& e : b.cfg.graph.edges) {
    if (e.kind == EdgeKind::ConstructorCall) ++constructor_calls;
    if (e.kind == EdgeKind::ClassReturn) ++class_returns;
  }
  CHECK(constructor_calls == 2);
  CHECK(class_returns == 1);
}

TEST_CASE("method calls add call and return edges") {
  auto b = cvtest::make_cfg(
      "class A {\n"
      "  int twice(int v) { return v + v; }\n"
      "  int run() { int r = twice(3); return r; }\n"
      "}\n",
      /*interprocedural=*/true);
  auto edges = cvtest::edge_triples(b.cfg.graph, View::Cfg);
  CHECK(has_triple(edges, "int r = twice(3);", "entry twice", "method_call"));
  CHECK(has_triple(edges, "exit twice", "int r = twice(3);", "method_return"));
}

TEST_CASE("calls on unknown receivers add no edges") {
  auto b = cvtest::make_cfg(
      "class A { void f() { System.out.println(1); unknown.call(); } }",
      /*interprocedural=*/true);
  for (const GraphEdge& e : b.cfg.graph.edges) {
    CHECK(e.kind != EdgeKind::MethodCall);
    CHECK(e.kind != EdgeKind::MethodReturn);
  }
  CHECK(b.cfg.calls.empty());
}

TEST_CASE("overloaded constructors separate on arity") {
  auto b = cvtest::make_cfg(
      "class B {\n"
      "  B() { zero(); }\n"
      "  B(int v) { one(); }\n"
      "}\n"
      "class Main { void m() { B b = new B(7); } }\n",
      /*interprocedural=*/true);
  REQUIRE(b.cfg.calls.size() == 1);
  const CfgCallable& callee = b.cfg.callables[static_cast<size_t>(b.cfg.calls[0].callee)];
  // The arity-1 constructor is the target.
  int decl = callee.decl_node;
  const Cst& cst = b.u->cst;
  CHECK(cst.slice(decl).find("B(int v)") == 0);
}

TEST_CASE("nested calls produce call edges in evaluation order") {
  auto b = cvtest::make_cfg(
      "class A {\n"
      "  int g(int v) { return v; }\n"
      "  int h(int v) { return v; }\n"
      "  int f(int a, int b) { return a + b; }\n"
      "  void run() { int r = f(g(1), h(2)); }\n"
      "}\n",
      /*interprocedural=*/true);
  REQUIRE(b.cfg.calls.size() == 3);
  std::vector<std::string> order;
  for (const CallSite& call : b.cfg.calls) {
    order.push_back(b.cfg.callables[static_cast<size_t>(call.callee)].name);
  }
  CHECK(order == std::vector<std::string>{"g", "h", "f"});
}

TEST_CASE("intra-procedural edges are untouched by other classes") {
  std::string method =
      "  int f(int c) { if (c > 0) { c = c + 1; } return c; }\n";
  auto alone = cvtest::make_cfg("class A {\n" + method + "}\n");
  auto crowded = cvtest::make_cfg(
      "class A {\n" + method + "}\nclass Z { void zz() { q = 1; } }\n");
  auto edges_of_f = [&](const cvtest::CfgBundle& b) {
    std::multiset<EdgeTriple> out;
    for (const GraphEdge& e : b.cfg.graph.edges) {
      const GraphNode& src = b.cfg.graph.nodes.at(e.src);
      if (src.enclosing_method && *src.enclosing_method == "f") {
        out.insert({src.label, b.cfg.graph.nodes.at(e.dst).label,
                    std::string(to_string(e.kind))});
      }
    }
    return out;
  };
  CHECK(edges_of_f(alone) == edges_of_f(crowded));
}

TEST_CASE("call and return edges pair up for bodied callees") {
  auto b = cvtest::make_cfg(
      "class A {\n"
      "  int id(int v) { return v; }\n"
      "  void run() { int x = id(1); int y = id(2); }\n"
      "}\n",
      /*interprocedural=*/true);
  int calls = 0, returns = 0;
  for (const GraphEdge& e : b.cfg.graph.edges) {
    if (e.kind == EdgeKind::MethodCall) ++calls;
    if (e.kind == EdgeKind::MethodReturn) ++returns;
  }
  CHECK(calls == 2);
  CHECK(returns == 2);
}

TEST_CASE("statement nodes share ids with their AST statement nodes") {
  auto u = cvtest::make_unit("class A { void f(int c) { if (c > 0) x = 1; } }");
  CodeViewGraph ast = build_ast(u->cst);
  Cfg cfg = build_intraprocedural_cfg(u->cst, u->table);
  for (const auto& [id, info] : cfg.info) {
    if (info.cst_node < 0) continue;  // synthetic entry/exit
    REQUIRE(ast.nodes.count(id) == 1);
    CHECK(ast.nodes.at(id).label == cfg.graph.nodes.at(id).label);
    CHECK(ast.nodes.at(id).span == cfg.graph.nodes.at(id).span);
  }
}
