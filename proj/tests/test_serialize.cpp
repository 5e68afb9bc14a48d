#include <doctest.h>

#include <random>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/dot_checker.hpp"
#include "support/fixtures.hpp"
#include "support/mini_java.hpp"

namespace fs = std::filesystem;

using namespace codeview;

namespace {

CodeViewGraph cfg_graph(const std::string& text) {
  auto b = cvtest::make_cfg(text);
  return b.cfg.graph;
}

std::set<int> node_ids(const CodeViewGraph& g) {
  std::set<int> out;
  for (const auto& [id, node] : g.nodes) out.insert(id);
  return out;
}

std::set<std::tuple<int, int, int, int>> edge_keys(const CodeViewGraph& g) {
  std::set<std::tuple<int, int, int, int>> out;
  for (const GraphEdge& e : g.edges) out.insert(e.key());
  return out;
}

}  // namespace

TEST_CASE("empty-body method serializes to two nodes and one edge") {
  CodeViewGraph g = cfg_graph("class A { void f(){} }");
  // type_declaration node + entry + exit
  CHECK(g.nodes.size() == 3);
  CHECK(g.edges.size() == 1);
  std::string bytes = to_json(g);
  CHECK(to_json(g) == bytes);  // stable across calls
  CodeViewGraph parsed = graph_from_json(bytes);
  CHECK(to_json(parsed) == bytes);
}

TEST_CASE("json round-trip reproduces nodes, edges, views and meta") {
  auto u = cvtest::make_unit("class A { void f(int c) { if (c > 0) x = 1; } }");
  ViewConfig config;
  config.views = {View::Ast, View::Cfg, View::Dfg};
  config.dfg.last_def = true;
  CodeViewGraph g = generate_views(u->unit, config);

  CodeViewGraph parsed = graph_from_json(to_json(g));
  CHECK(parsed.nodes == g.nodes);
  CHECK(edge_keys(parsed) == edge_keys(g));
  CHECK(parsed.views == g.views);
  CHECK(parsed.meta == g.meta);
}

TEST_CASE("nodes are sorted by id, edges canonically") {
  CodeViewGraph g = cfg_graph("class A { void f(int c) { if (c > 0) x = 1; y = 2; } }");
  std::string bytes = to_json(g);
  size_t pos = 0;
  int last_id = -1;
  while ((pos = bytes.find("\"id\": ", pos)) != std::string::npos) {
    pos += 6;
    int id = std::stoi(bytes.substr(pos));
    CHECK(id > last_id);
    last_id = id;
  }
}

TEST_CASE("dot output passes a strict grammar check") {
  std::mt19937 rng(41);
  for (int i = 0; i < 40; ++i) {
    auto u = cvtest::make_unit(cvtest::generate_rich_snippet(rng));
    ViewConfig config;
    config.views = {View::Ast, View::Cfg, View::Dfg};
    config.dfg.last_def = true;
    config.dfg.last_use = true;
    CodeViewGraph g = generate_views(u->unit, config);
    std::string dot = to_dot(g);
    auto error = cvtest::check_dot(dot);
    if (error) FAIL("invalid DOT: ", *error, "\n", dot.substr(0, 400));
  }
}

TEST_CASE("dot escapes quotes, backslashes and newlines in labels") {
  auto u = cvtest::make_unit("class A { void f() { s = \"he\\\"llo\"; } }");
  CodeViewGraph g = build_ast(u->cst);
  std::string dot = to_dot(g);
  CHECK(cvtest::check_dot(dot) == std::nullopt);
  CHECK(dot.find("he\\\\\\\"llo") != std::string::npos);
}

TEST_CASE("cfg edges carry the red color class, colors removable") {
  CodeViewGraph g = cfg_graph("class A { void f(){ x = 1; } }");
  std::string dot = to_dot(g);
  CHECK(dot.find("color=\"red\"") != std::string::npos);
  DotOptions plain;
  plain.color = false;
  std::string no_color = to_dot(g, plain);
  CHECK(no_color.find("color") == std::string::npos);
  CHECK(cvtest::check_dot(no_color) == std::nullopt);
}

TEST_CASE("combining a single view is the identity") {
  CodeViewGraph g = cfg_graph("class A { void f(){ x = 1; } }");
  CodeViewGraph combined = combine_views({g});
  CHECK(combined.nodes == g.nodes);
  CHECK(edge_keys(combined) == edge_keys(g));
  CHECK(combined.views == g.views);
}

TEST_CASE("cfg+dfg combination keeps the cfg node set and unions edges") {
  auto b = cvtest::make_cfg(
      "class A { void f(int c) { x = 0; while (c > 0) { x = x + 1; } r = x; } }");
  DfgResult dfg = build_dfg(b.cfg, b.u->table, {});
  CodeViewGraph combined = combine_views({b.cfg.graph, dfg.graph});
  CHECK(node_ids(combined) == node_ids(b.cfg.graph));
  std::set<std::tuple<int, int, int, int>> expected = edge_keys(b.cfg.graph);
  for (auto k : edge_keys(dfg.graph)) expected.insert(k);
  CHECK(edge_keys(combined) == expected);
}

TEST_CASE("views with disjoint edge kinds add their edge counts") {
  auto u = cvtest::make_unit(
      "class A { void f(int c) { int x = 0; if (c > 0) { x = 1; } r = x; } }");
  Cfg cfg = build_intraprocedural_cfg(u->cst, u->table);
  DfgResult dfg = build_dfg(cfg, u->table, {});
  CodeViewGraph ast = build_ast(u->cst);

  std::vector<std::vector<CodeViewGraph>> subsets = {
      {ast, cfg.graph},
      {ast, dfg.graph},
      {cfg.graph, dfg.graph},
      {ast, cfg.graph, dfg.graph},
  };
  for (const auto& subset : subsets) {
    CodeViewGraph combined = combine_views(subset);
    size_t total = 0;
    std::set<int> ids;
    for (const CodeViewGraph& g : subset) {
      total += g.edges.size();
      for (int id : node_ids(g)) ids.insert(id);
    }
    CHECK(combined.edges.size() == total);
    CHECK(node_ids(combined) == ids);
  }
}

TEST_CASE("combine is idempotent and order-insensitive") {
  auto u = cvtest::make_unit("class A { void f(int c) { if (c > 0) x = 1; } }");
  Cfg cfg = build_intraprocedural_cfg(u->cst, u->table);
  DfgResult dfg = build_dfg(cfg, u->table, {});
  CodeViewGraph ab = combine_views({cfg.graph, dfg.graph});
  CodeViewGraph abb = combine_views({ab, dfg.graph});
  CHECK(node_ids(abb) == node_ids(ab));
  CHECK(edge_keys(abb) == edge_keys(ab));
  CodeViewGraph ba = combine_views({dfg.graph, cfg.graph});
  CHECK(node_ids(ba) == node_ids(ab));
  CHECK(edge_keys(ba) == edge_keys(ab));
  CHECK(to_json(graph_from_json(to_json(ab))) == to_json(ab));
}

TEST_CASE("graphs from different units refuse to combine") {
  CodeViewGraph a = cfg_graph("class A { void f(){ x = 1; } }");
  CodeViewGraph b = cfg_graph("class B { void g(){ y = 2; } }");
  CHECK_THROWS_AS(combine_views({a, b}), MixedUnitError);
}

TEST_CASE("serialized bytes are identical across repeated pipeline runs") {
  SourceUnit unit;
  unit.text =
      "class A { int f(int c) { int x = 0; while (c > 0) { x += c; c--; } return x; } }";
  ViewConfig config;
  config.views = {View::Ast, View::Cfg, View::Dfg};
  config.ast.collapsed = true;
  config.dfg.last_def = true;
  std::string first = generate_serialized(unit, config);
  for (int i = 0; i < 3; ++i) {
    CHECK(generate_serialized(unit, config) == first);
  }
}

TEST_CASE("edge kind names cover the full vocabulary") {
  for (EdgeKind kind :
       {EdgeKind::AstChild, EdgeKind::Next, EdgeKind::True, EdgeKind::False,
        EdgeKind::LoopBack, EdgeKind::SwitchCase, EdgeKind::ConstructorCall,
        EdgeKind::ClassReturn, EdgeKind::MethodCall, EdgeKind::MethodReturn,
        EdgeKind::DataFlow, EdgeKind::LastDef, EdgeKind::LastUse,
        EdgeKind::Alias}) {
    auto parsed = edge_kind_from_string(to_string(kind));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == kind);
    CHECK(view_of(kind) == view_of(*parsed));
  }
}

TEST_CASE("committed golden outputs stay byte-stable") {
  fs::path dir = fs::path(CODEVIEW_TEST_DIR) / "golden";
  std::ifstream src(dir / "fig2.java", std::ios::binary);
  REQUIRE(src.good());
  std::stringstream buffer;
  buffer << src.rdbuf();

  SourceUnit unit;
  unit.text = buffer.str();
  ViewConfig config;
  config.views = {View::Cfg, View::Dfg};

  auto read_file = [&](const char* name) {
    std::ifstream in(dir / name, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };

  config.format = OutputFormat::Json;
  CHECK(generate_serialized(unit, config) == read_file("fig2_cfg_dfg.json"));
  config.format = OutputFormat::Dot;
  DotOptions no_color;
  no_color.color = false;
  CHECK(generate_serialized(unit, config, no_color) == read_file("fig2_cfg_dfg.dot"));
}
