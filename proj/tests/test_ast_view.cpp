#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/mini_java.hpp"

using namespace codeview;

namespace {

int count_kind(const CodeViewGraph& g, std::string_view kind) {
  int n = 0;
  for (const auto& [id, node] : g.nodes) {
    if (node.kind == kind) ++n;
  }
  return n;
}

int count_named_cst(const Cst& cst) {
  int n = 0;
  for (int i = 0; i < cst.size(); ++i) {
    if (cst.node(i).named) ++n;
  }
  return n;
}

/// Multiset of leaf labels (nodes without outgoing ast_child edges).
std::multiset<std::string> leaf_labels(const CodeViewGraph& g) {
  std::set<int> parents;
  for (const GraphEdge& e : g.edges) parents.insert(e.src);
  std::multiset<std::string> out;
  for (const auto& [id, node] : g.nodes) {
    if (!parents.count(id)) out.insert(node.label);
  }
  return out;
}

}  // namespace

TEST_CASE("AST drops punctuation but keeps named structure") {
  auto u = cvtest::make_unit("class A { }");
  CodeViewGraph ast = build_ast(u->cst);
  // Only named nodes survive; braces and keywords are anonymous tokens.
  for (const auto& [id, node] : ast.nodes) {
    CHECK(node.kind != "{");
    CHECK(node.kind != "}");
    CHECK(node.kind != ";");
  }
  CHECK(static_cast<int>(ast.nodes.size()) <= u->cst.size());
  CHECK(count_kind(ast, "class_declaration") == 1);
  CHECK(ast.views.count(View::Ast) == 1);
}

TEST_CASE("field access and method invocation nodes are retained") {
  auto u = cvtest::make_unit("class A { void m() { x = a.f(b); } }");
  CodeViewGraph ast = build_ast(u->cst);
  CHECK(count_kind(ast, "method_invocation") == 1);
  CHECK(count_kind(ast, "assignment_expression") == 1);
  // receiver path: a.f is the object/name pair of the invocation
  CHECK(count_kind(ast, "identifier") >= 3);
}

TEST_CASE("AST node count never exceeds CST node count") {
  std::mt19937 rng(7);
  for (int i = 0; i < 30; ++i) {
    auto u = cvtest::make_unit(cvtest::generate_rich_snippet(rng));
    CodeViewGraph ast = build_ast(u->cst);
    CHECK(static_cast<int>(ast.nodes.size()) <= u->cst.size());
    CHECK(static_cast<int>(ast.nodes.size()) == count_named_cst(u->cst));
  }
}

TEST_CASE("collapse merges the occurrences of one variable") {
  auto u = cvtest::make_unit("void m() { int x; x = x + 1; }");
  CodeViewGraph ast = build_ast(u->cst);
  int before = count_kind(ast, "identifier");
  CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
  int after = count_kind(collapsed, "identifier");
  // m (method name) + three x occurrences; the x's merge into one node.
  CHECK(before == 4);
  CHECK(after == 2);

  // The shared node has one incoming edge per former parent.
  int shared = -1;
  for (const auto& [id, node] : collapsed.nodes) {
    if (node.kind == "identifier" && node.label == "x") shared = id;
  }
  REQUIRE(shared >= 0);
  int incoming = 0;
  for (const GraphEdge& e : collapsed.edges) {
    if (e.dst == shared) ++incoming;
  }
  CHECK(incoming == 3);
}

TEST_CASE("collapse leaves all-distinct variables untouched") {
  auto u = cvtest::make_unit("void m() { int x = 1; int y = 2; int z = x; }");
  // x occurs twice (decl + read), y and z once each.
  CodeViewGraph ast = build_ast(u->cst);
  CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
  CHECK(count_kind(ast, "identifier") - count_kind(collapsed, "identifier") == 1);

  auto u2 = cvtest::make_unit("void m() { int x = 1; int y = 2; }");
  CodeViewGraph ast2 = build_ast(u2->cst);
  CodeViewGraph collapsed2 = collapse_ast(ast2, u2->cst, u2->table);
  CHECK(ast2.nodes.size() == collapsed2.nodes.size());
  CHECK(ast2.edges.size() == collapsed2.edges.size());
}

TEST_CASE("collapse never merges across scopes") {
  auto u = cvtest::make_unit(
      "class A { void f() { { int x = 1; x = 2; } { int x = 3; x = 4; } } }");
  CodeViewGraph ast = build_ast(u->cst);
  CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
  // Two x symbols remain (one shared node per block), plus the class and
  // method name identifiers, which never merge.
  CHECK(count_kind(collapsed, "identifier") == 4);
}

TEST_CASE("collapse ignores method names and unresolved identifiers") {
  auto u = cvtest::make_unit("void m() { helper(g); helper(g); }");
  CodeViewGraph ast = build_ast(u->cst);
  CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
  // helper und g are free; nothing merges.
  CHECK(ast.nodes.size() == collapsed.nodes.size());
}

TEST_CASE("collapse never increases the node count") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto u = cvtest::make_unit(cvtest::generate_rich_snippet(rng));
    CodeViewGraph ast = build_ast(u->cst);
    CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
    CHECK(collapsed.nodes.size() <= ast.nodes.size());
  }
}

TEST_CASE("empty blacklist minimization is the identity") {
  auto u = cvtest::make_unit("class A { void m() { x = (a + b); } }");
  CodeViewGraph ast = build_ast(u->cst);
  CodeViewGraph min = minimize_ast(ast, {});
  CHECK(min == ast);
}

TEST_CASE("minimization re-parents children of removed nodes in order") {
  auto u = cvtest::make_unit("void m() { x = (a + b); }");
  CodeViewGraph ast = build_ast(u->cst);
  CodeViewGraph min = minimize_ast(ast, {"parenthesized_expression"});

  CHECK(count_kind(min, "parenthesized_expression") == 0);
  int assign = -1;
  int binary = -1;
  for (const auto& [id, node] : min.nodes) {
    if (node.kind == "assignment_expression") assign = id;
    if (node.kind == "binary_expression") binary = id;
  }
  REQUIRE(assign >= 0);
  REQUIRE(binary >= 0);
  bool reparented = false;
  for (const GraphEdge& e : min.edges) {
    if (e.src == assign && e.dst == binary) reparented = true;
  }
  CHECK(reparented);
  CHECK(leaf_labels(min) == leaf_labels(ast));
}

TEST_CASE("removing intermediate kinds preserves the leaf multiset") {
  // Kinds that always carry children when present; blacklisting a kind that
  // can itself be a leaf (an empty block, an empty argument list) removes
  // that leaf by definition.
  std::mt19937 rng(13);
  for (int i = 0; i < 30; ++i) {
    auto u = cvtest::make_unit(cvtest::generate_rich_snippet(rng));
    CodeViewGraph ast = build_ast(u->cst);
    CodeViewGraph min = minimize_ast(
        ast, {"parenthesized_expression", "binary_expression",
              "expression_statement", "local_variable_declaration"});
    CHECK(leaf_labels(min) == leaf_labels(ast));
    CHECK(min.nodes.size() <= ast.nodes.size());
  }
}

TEST_CASE("minimization size is monotone in the blacklist") {
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto u = cvtest::make_unit(cvtest::generate_rich_snippet(rng));
    CodeViewGraph ast = build_ast(u->cst);
    std::set<std::string> small{"parenthesized_expression"};
    std::set<std::string> large{"parenthesized_expression", "binary_expression",
                                "block"};
    CHECK(minimize_ast(ast, large).nodes.size() <=
          minimize_ast(ast, small).nodes.size());
  }
}

TEST_CASE("blacklisting the root kind is an error") {
  auto u = cvtest::make_unit("class A { }");
  CodeViewGraph ast = build_ast(u->cst);
  CHECK_THROWS_AS(minimize_ast(ast, {"program"}), BlacklistCoversRootError);
}

TEST_CASE("collapse after minimize keeps shared identifiers reachable") {
  auto u = cvtest::make_unit("void m() { int x; x = (x + 1); }");
  CodeViewGraph ast = build_ast(u->cst);
  CodeViewGraph min = minimize_ast(ast, {"parenthesized_expression"});
  CodeViewGraph collapsed = collapse_ast(min, u->cst, u->table);
  // method name m + the shared x node
  CHECK(count_kind(collapsed, "identifier") == 2);
}
