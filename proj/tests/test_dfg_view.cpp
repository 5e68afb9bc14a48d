#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/mini_java.hpp"

using namespace codeview;
using cvtest::EdgeTriple;

namespace {

DefUse defuse_for(const cvtest::CfgBundle& b, const std::string& label) {
  int id = cvtest::node_by_label(b.cfg.graph, label);
  REQUIRE(id >= 0);
  return extract_defs_uses(b.cfg, id, b.u->table);
}

std::set<std::string> def_names(const DefUse& du) {
  std::set<std::string> out;
  for (const Definition& d : du.defs) out.insert(d.sym.name);
  return out;
}

std::set<std::string> use_names(const DefUse& du) {
  std::set<std::string> out;
  for (const SymbolKey& u : du.uses) out.insert(u.name);
  return out;
}

DfgResult dfg_for(const cvtest::CfgBundle& b, DfgOptions options = {}) {
  return build_dfg(b.cfg, b.u->table, options);
}

bool has_edge(const CodeViewGraph& g, const std::string& src,
              const std::string& dst, EdgeKind kind) {
  int s = cvtest::node_by_label(g, src);
  int d = cvtest::node_by_label(g, dst);
  if (s < 0 || d < 0) return false;
  return g.has_edge(s, d, kind);
}

}  // namespace

TEST_CASE("defs and uses of simple statements") {
  auto b = cvtest::make_cfg("void m(int a, int b) { x = a + b; x += y; arr[i] = v; }");

  DefUse assign = defuse_for(b, "x = a + b;");
  CHECK(def_names(assign) == std::set<std::string>{"x"});
  CHECK(use_names(assign) == std::set<std::string>{"a", "b"});

  DefUse compound = defuse_for(b, "x += y;");
  CHECK(def_names(compound) == std::set<std::string>{"x"});
  CHECK(use_names(compound) == std::set<std::string>{"x", "y"});

  DefUse element = defuse_for(b, "arr[i] = v;");
  CHECK(def_names(element) == std::set<std::string>{"arr"});
  CHECK(use_names(element) == std::set<std::string>{"arr", "i", "v"});
  REQUIRE(element.defs.size() == 1);
  CHECK(element.defs[0].weak);  // element write keeps earlier defs alive
}

TEST_CASE("declarations def their variable, with and without initializer") {
  auto b = cvtest::make_cfg("void m() { int x; int y = x + 1; }");
  DefUse decl = defuse_for(b, "int x;");
  REQUIRE(decl.defs.size() == 1);
  CHECK(decl.defs[0].decl_only);
  DefUse init = defuse_for(b, "int y = x + 1;");
  REQUIRE(init.defs.size() == 1);
  CHECK_FALSE(init.defs[0].decl_only);
  CHECK(use_names(init) == std::set<std::string>{"x"});
}

TEST_CASE("method entry defs every parameter") {
  auto b = cvtest::make_cfg("class A { void f(int p, String q) { x = p; } }");
  REQUIRE(b.cfg.callables.size() == 1);
  DefUse entry = extract_defs_uses(b.cfg, b.cfg.callables[0].entry, b.u->table);
  CHECK(def_names(entry) == std::set<std::string>{"p", "q"});
  CHECK(entry.uses.empty());
}

TEST_CASE("field write through this defs the field, updates and reads combine") {
  auto b = cvtest::make_cfg("class A { int y; void f(int v) { this.y = v; y++; } }");
  DefUse through_this = defuse_for(b, "this.y = v;");
  CHECK(def_names(through_this) == std::set<std::string>{"y"});
  CHECK(use_names(through_this) == std::set<std::string>{"v"});
  DefUse update = defuse_for(b, "y++;");
  CHECK(def_names(update) == std::set<std::string>{"y"});
  CHECK(use_names(update) == std::set<std::string>{"y"});
}

TEST_CASE("kill semantics: only the latest definition reaches") {
  auto b = cvtest::make_cfg("void m() { x = 1; x = 2; y = x; }");
  DfgResult r = dfg_for(b);
  CHECK(has_edge(r.graph, "x = 2;", "y = x;", EdgeKind::DataFlow));
  CHECK_FALSE(has_edge(r.graph, "x = 1;", "y = x;", EdgeKind::DataFlow));

  // IN at the use holds exactly one definition of x.
  int use = cvtest::node_by_label(r.graph, "y = x;");
  int def2 = cvtest::node_by_label(r.graph, "x = 2;");
  int count = 0;
  for (const Definition& d : r.phase2.in_defs(use)) {
    if (d.sym.name == "x") {
      ++count;
      CHECK(d.site == def2);
    }
  }
  CHECK(count == 1);
}

TEST_CASE("loop data-flow: definitions flow through the back edge") {
  auto b = cvtest::make_cfg("void m(int c) { x = 0; while (c > 0) { x = x + 1; } r = x; }");
  DfgResult r = dfg_for(b);
  // Both the init and the loop body definition reach the read after the loop.
  CHECK(has_edge(r.graph, "x = 0;", "r = x;", EdgeKind::DataFlow));
  CHECK(has_edge(r.graph, "x = x + 1;", "r = x;", EdgeKind::DataFlow));
  // Loop-carried dependence: the body reads its own previous iteration.
  CHECK(has_edge(r.graph, "x = x + 1;", "x = x + 1;", EdgeKind::DataFlow));
  CHECK(has_edge(r.graph, "x = 0;", "x = x + 1;", EdgeKind::DataFlow));
}

TEST_CASE("use of a never-defined free variable draws no data_flow edge") {
  auto b = cvtest::make_cfg("void m() { print(g); }");
  DfgResult r = dfg_for(b);
  for (const GraphEdge& e : r.graph.edges) CHECK(e.kind != EdgeKind::DataFlow);
}

TEST_CASE("empty method has empty facts except parameter defs at entry") {
  auto b = cvtest::make_cfg("class A { void f(int p) { } }");
  DfgResult r = dfg_for(b);
  const CfgCallable& f = b.cfg.callables[0];
  CHECK(r.phase2.in_defs(f.entry).empty());
  auto out = r.phase2.out_defs(f.entry);
  REQUIRE(out.size() == 1);
  CHECK(out[0].sym.name == "p");
  auto exit_in = r.phase2.in_defs(f.exit);
  REQUIRE(exit_in.size() == 1);
  CHECK(exit_in[0].sym.name == "p");
}

TEST_CASE("random programs match the path-enumeration oracle exactly") {
  std::mt19937 rng(20240821);
  for (int i = 0; i < 150; ++i) {
    cvtest::MiniProgram p = cvtest::generate_mini_program(rng);
    cvtest::OracleResult oracle = cvtest::run_rda_oracle(p);

    auto b = cvtest::make_cfg(p.source);
    DfgResult r = dfg_for(b);

    // Map model statements to node ids by their unique labels.
    std::map<int, int> node_of_stmt;
    for (const cvtest::MiniStmt& s : p.stmts) {
      int id = cvtest::node_by_label(r.graph, s.text);
      REQUIRE(id >= 0);
      node_of_stmt[s.index] = id;
    }
    std::map<int, int> stmt_of_node;
    for (const auto& [stmt, node] : node_of_stmt) stmt_of_node[node] = stmt;

    std::set<std::pair<int, int>> actual;
    for (const GraphEdge& e : r.graph.edges) {
      if (e.kind != EdgeKind::DataFlow) continue;
      REQUIRE(stmt_of_node.count(e.src));
      REQUIRE(stmt_of_node.count(e.dst));
      actual.insert({stmt_of_node[e.src], stmt_of_node[e.dst]});
    }
    CHECK(actual == oracle.def_use_edges);
  }
}

TEST_CASE("worklist terminates within the lattice-height bound") {
  std::mt19937 rng(37);
  for (int i = 0; i < 50; ++i) {
    cvtest::MiniProgram p = cvtest::generate_mini_program(rng);
    auto b = cvtest::make_cfg(p.source);
    auto genkill = compute_gen_kill(b.cfg, b.u->table);
    RdaFacts facts = solve_rda(b.cfg, genkill, false);
    size_t statements = b.cfg.graph.nodes.size();
    size_t defs = facts.universe.size();
    CHECK(facts.iterations <= statements * (defs + 2));
  }
}

// ---- alias analysis --------------------------------------------------------

TEST_CASE("reference copies share an alias set, primitives never do") {
  auto b = cvtest::make_cfg(
      "class ClassB { void set(int v) { } }\n"
      "class Main { void m() {\n"
      "  ClassB a = new ClassB();\n"
      "  ClassB b = a;\n"
      "  int x = 1;\n"
      "  int y = x;\n"
      "} }\n");
  AliasSets aliases = compute_alias_sets(b.cfg, b.u->table, false);
  auto sets = aliases.sets();
  REQUIRE(sets.size() == 1);
  CHECK(sets[0].size() == 2);
  for (int entry : sets[0]) {
    CHECK_FALSE(b.u->table.is_primitive_type(b.u->table.entry(entry).declared_type));
  }
}

TEST_CASE("mutation through one alias reaches reads of the other") {
  auto b = cvtest::make_cfg(
      "class ClassB { void set(int v) { } }\n"
      "class Main { void m() {\n"
      "  ClassB a = new ClassB();\n"
      "  ClassB b = a;\n"
      "  b.set(1);\n"
      "  use(a);\n"
      "} }\n",
      /*interprocedural=*/true);
  DfgResult r = dfg_for(b);
  CHECK(has_edge(r.graph, "b.set(1);", "use(a);", EdgeKind::DataFlow));
}

TEST_CASE("unrelated references stay separate") {
  auto b = cvtest::make_cfg(
      "class B { }\n"
      "class Main { void m() { B a = new B(); B b = new B(); } }\n");
  AliasSets aliases = compute_alias_sets(b.cfg, b.u->table, false);
  CHECK(aliases.sets().empty());
}

TEST_CASE("alias weak updates never remove plain data-flow edges") {
  std::string text =
      "void m() { int x = 1; int y = x + 2; }";
  auto b = cvtest::make_cfg(text);
  auto genkill = compute_gen_kill(b.cfg, b.u->table);
  RdaFacts facts = solve_rda(b.cfg, genkill, false);
  AliasSets none;
  AliasSets computed = compute_alias_sets(b.cfg, b.u->table, false);
  auto without = build_dfg_edges(b.cfg, facts, genkill, none);
  auto with = build_dfg_edges(b.cfg, facts, genkill, computed);
  for (const GraphEdge& e : without) {
    CHECK(std::find(with.begin(), with.end(), e) != with.end());
  }
}

// ---- two-phase inter-procedural analysis ------------------------------------

namespace {

std::string mutation_fixture(const char* param_type, const char* mutation) {
  return std::string("class Box { int v; void mut(") + param_type +
         " p) { " + mutation +
         " } }\n"
         "class Main { void m() {\n"
         "  Box box = new Box();\n"
         "  int plain = 1;\n"
         "  box.mut(" +
         (std::string(param_type) == "int" ? "plain" : "box") +
         ");\n"
         "  sink(box, plain);\n"
         "} }\n";
}

}  // namespace

TEST_CASE("reference argument mutation flows back to the caller") {
  auto b = cvtest::make_cfg(mutation_fixture("Box", "p.v = 9;"),
                            /*interprocedural=*/true);
  DfgResult r = dfg_for(b);
  CHECK(r.two_phase);
  CHECK(has_edge(r.graph, "p.v = 9;", "sink(box, plain);", EdgeKind::DataFlow));
}

TEST_CASE("primitive argument reassignment never flows back") {
  auto b = cvtest::make_cfg(mutation_fixture("int", "p = 9;"),
                            /*interprocedural=*/true);
  DfgResult r = dfg_for(b);
  CHECK(r.two_phase);
  CHECK_FALSE(has_edge(r.graph, "p = 9;", "sink(box, plain);", EdgeKind::DataFlow));
  // The argument read at the call site still sees the caller's definition.
  CHECK(has_edge(r.graph, "int plain = 1;", "box.mut(plain);", EdgeKind::DataFlow));
}

TEST_CASE("phase-2 facts contain phase-1 facts statement-wise") {
  auto b = cvtest::make_cfg(mutation_fixture("Box", "p.v = 9;"),
                            /*interprocedural=*/true);
  auto genkill = compute_gen_kill(b.cfg, b.u->table);
  TwoPhaseFacts facts = run_two_phase_rda(b.cfg, genkill);
  CHECK(facts.phase2.contains_all_of(facts.phase1));
}

TEST_CASE("argument binding links caller definitions to callee reads") {
  auto b = cvtest::make_cfg(
      "class Box { int v; int get(Box p) { return p.v; } }\n"
      "class Main { void m() {\n"
      "  Box box = new Box();\n"
      "  box.get(box);\n"
      "} }\n",
      /*interprocedural=*/true);
  DfgResult r = dfg_for(b);
  CHECK(has_edge(r.graph, "Box box = new Box();", "return p.v;", EdgeKind::DataFlow));
}

TEST_CASE("assigned call results receive return-value flow") {
  auto b = cvtest::make_cfg(
      "class A {\n"
      "  int pick(int v) { return v + 1; }\n"
      "  void run() { int r = pick(2); use(r); }\n"
      "}\n",
      /*interprocedural=*/true);
  DfgResult r = dfg_for(b);
  CHECK(has_edge(r.graph, "return v + 1;", "int r = pick(2);", EdgeKind::DataFlow));
}

// ---- last_def / last_use -----------------------------------------------------

TEST_CASE("last_def links declarations and redefinitions") {
  auto b = cvtest::make_cfg("void m() { int x; x = 1; x = 2; }");
  DfgOptions options;
  options.last_def = true;
  DfgResult r = dfg_for(b, options);
  CHECK(has_edge(r.graph, "int x;", "x = 1;", EdgeKind::LastDef));
  CHECK(has_edge(r.graph, "x = 1;", "x = 2;", EdgeKind::LastDef));
  CHECK_FALSE(has_edge(r.graph, "int x;", "x = 2;", EdgeKind::LastDef));
}

TEST_CASE("last_use chains successive reads of a free variable") {
  auto b = cvtest::make_cfg("void m() { print(g); h(g); k(g); }");
  DfgOptions options;
  options.last_use = true;
  DfgResult r = dfg_for(b, options);
  CHECK(has_edge(r.graph, "print(g);", "h(g);", EdgeKind::LastUse));
  CHECK(has_edge(r.graph, "h(g);", "k(g);", EdgeKind::LastUse));
  // chaining, not fan-out
  CHECK_FALSE(has_edge(r.graph, "print(g);", "k(g);", EdgeKind::LastUse));
}

TEST_CASE("redefinition cuts last_use chains") {
  auto b = cvtest::make_cfg("void m() { print(g); g = 1; k(g); }");
  DfgOptions options;
  options.last_use = true;
  DfgResult r = dfg_for(b, options);
  CHECK_FALSE(has_edge(r.graph, "print(g);", "k(g);", EdgeKind::LastUse));
}

TEST_CASE("options off emit no auxiliary edges") {
  auto b = cvtest::make_cfg("void m() { int x; x = 1; print(x); print(x); }");
  DfgResult r = dfg_for(b);
  for (const GraphEdge& e : r.graph.edges) {
    CHECK(e.kind != EdgeKind::LastDef);
    CHECK(e.kind != EdgeKind::LastUse);
  }
}
