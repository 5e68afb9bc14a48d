// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits non-zero when any criterion fails. Runtime limits are enforced.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "support/dot_checker.hpp"
#include "support/fixtures.hpp"
#include "support/mini_java.hpp"

using namespace codeview;
namespace fs = std::filesystem;

namespace {

class Check {
 public:
  void require(bool condition, const std::string& detail) {
    if (!condition) failures_.push_back(detail);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

using CriterionFn = std::function<void(Check&)>;

double run_timed(const CriterionFn& fn, Check& check) {
  auto start = std::chrono::steady_clock::now();
  fn(check);
  auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(end - start).count();
}

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

// ---- criterion 1: structural reproduction of the two-class scenario --------

void criterion_fig2(Check& check) {
  auto b = cvtest::make_cfg(fig2_program(), /*interprocedural=*/true);
  const CodeViewGraph& g = b.cfg.graph;

  std::vector<GraphEdge> ctor_calls;
  std::vector<GraphEdge> class_returns;
  for (const GraphEdge& e : g.edges) {
    if (e.kind == EdgeKind::ConstructorCall) ctor_calls.push_back(e);
    if (e.kind == EdgeKind::ClassReturn) class_returns.push_back(e);
  }
  check.require(ctor_calls.size() == 2,
                "expected exactly 2 constructor_call edges, got " +
                    std::to_string(ctor_calls.size()));
  check.require(class_returns.size() == 1,
                "expected exactly 1 class_return edge, got " +
                    std::to_string(class_returns.size()));

  int site_a = cvtest::node_by_label(g, "ClassA a = new ClassA();");
  int site_b = cvtest::node_by_label(g, "ClassB b = new ClassB(1);");
  int decl_a = cvtest::node_by_label(g, "class ClassA");
  int ctor_entry = cvtest::node_by_label(g, "entry ClassB");
  int ctor_tail = cvtest::node_by_label(g, "y = v;");
  check.require(site_a >= 0 && site_b >= 0 && decl_a >= 0 && ctor_entry >= 0 &&
                    ctor_tail >= 0,
                "fixture nodes not found");

  check.require(g.has_edge(site_a, decl_a, EdgeKind::ConstructorCall),
                "constructor_call to ClassA's type declaration missing");
  check.require(g.has_edge(site_b, ctor_entry, EdgeKind::ConstructorCall),
                "constructor_call to ClassB's constructor entry missing");
  check.require(g.has_edge(ctor_tail, site_b, EdgeKind::ClassReturn),
                "class_return from ClassB's constructor tail missing");
}

// ---- criterion 2: oracle equivalence on random mini programs ----------------

void criterion_oracle(Check& check) {
  std::mt19937 rng(424242);
  int mismatches = 0;
  const int kPrograms = 1000;
  for (int i = 0; i < kPrograms; ++i) {
    cvtest::MiniProgram p = cvtest::generate_mini_program(rng);
    cvtest::OracleResult oracle = cvtest::run_rda_oracle(p);

    auto b = cvtest::make_cfg(p.source);
    DfgResult r = build_dfg(b.cfg, b.u->table, {});

    std::map<int, int> stmt_of_node;
    bool mapped = true;
    for (const cvtest::MiniStmt& s : p.stmts) {
      int id = cvtest::node_by_label(r.graph, s.text);
      if (id < 0) {
        mapped = false;
        break;
      }
      stmt_of_node[id] = s.index;
    }
    if (!mapped) {
      ++mismatches;
      continue;
    }
    std::set<std::pair<int, int>> actual;
    for (const GraphEdge& e : r.graph.edges) {
      if (e.kind != EdgeKind::DataFlow) continue;
      if (!stmt_of_node.count(e.src) || !stmt_of_node.count(e.dst)) {
        mapped = false;
        break;
      }
      actual.insert({stmt_of_node[e.src], stmt_of_node[e.dst]});
    }
    if (!mapped || actual != oracle.def_use_edges) ++mismatches;
  }
  check.require(mismatches == 0,
                std::to_string(mismatches) + "/" + std::to_string(kPrograms) +
                    " programs disagreed with the oracle");
}

// ---- criterion 3: loop data-flow regression ---------------------------------

void criterion_loop(Check& check) {
  auto b = cvtest::make_cfg("x=0; while(c){x=x+1;} r=x;");
  DfgResult r = build_dfg(b.cfg, b.u->table, {});
  const CodeViewGraph& g = r.graph;

  int init = cvtest::node_by_label(g, "x=0;");
  int body = cvtest::node_by_label(g, "x=x+1;");
  int read = cvtest::node_by_label(g, "r=x;");
  check.require(init >= 0 && body >= 0 && read >= 0, "fixture nodes not found");

  check.require(g.has_edge(init, read, EdgeKind::DataFlow),
                "init -> read data_flow edge missing");
  check.require(g.has_edge(body, read, EdgeKind::DataFlow),
                "loop body -> read data_flow edge missing");
  check.require(g.has_edge(body, body, EdgeKind::DataFlow),
                "loop-carried body -> body data_flow edge missing");

  // Exactness: the full data_flow edge set of this fixture.
  std::set<std::pair<int, int>> expected{
      {init, body}, {body, body}, {init, read}, {body, read}};
  std::set<std::pair<int, int>> actual;
  for (const GraphEdge& e : g.edges) {
    if (e.kind == EdgeKind::DataFlow) actual.insert({e.src, e.dst});
  }
  check.require(actual == expected, "data_flow edge set differs from expected");
}

// ---- criterion 4: inter-procedural write-back --------------------------------

void criterion_writeback(Check& check) {
  {
    auto b = cvtest::make_cfg(
        "class Box { int v; void mut(Box p) { p.v = 9; } }\n"
        "class Main { void m() {\n"
        "  Box box = new Box();\n"
        "  box.mut(box);\n"
        "  sink(box);\n"
        "} }\n",
        /*interprocedural=*/true);
    DfgResult r = build_dfg(b.cfg, b.u->table, {});
    int mut = cvtest::node_by_label(r.graph, "p.v = 9;");
    int sink = cvtest::node_by_label(r.graph, "sink(box);");
    check.require(mut >= 0 && sink >= 0, "reference fixture nodes not found");
    check.require(r.graph.has_edge(mut, sink, EdgeKind::DataFlow),
                  "mutation in callee must reach the caller's read");
  }
  {
    auto b = cvtest::make_cfg(
        "class Box { void mut(int p) { p = 9; } }\n"
        "class Main { void m() {\n"
        "  Box box = new Box();\n"
        "  int plain = 1;\n"
        "  box.mut(plain);\n"
        "  sink(plain);\n"
        "} }\n",
        /*interprocedural=*/true);
    DfgResult r = build_dfg(b.cfg, b.u->table, {});
    int mut = cvtest::node_by_label(r.graph, "p = 9;");
    int sink = cvtest::node_by_label(r.graph, "sink(plain);");
    check.require(mut >= 0 && sink >= 0, "primitive fixture nodes not found");
    check.require(!r.graph.has_edge(mut, sink, EdgeKind::DataFlow),
                  "primitive reassignment must not reach the caller's read");
  }
}

// ---- criterion 5: two-phase monotonicity --------------------------------------

void criterion_monotonicity(Check& check) {
  std::mt19937 rng(515151);
  int violations = 0;
  int units = 0;
  auto inspect = [&](const std::string& text) {
    auto b = cvtest::make_cfg(text, /*interprocedural=*/true);
    auto genkill = compute_gen_kill(b.cfg, b.u->table);
    TwoPhaseFacts facts = run_two_phase_rda(b.cfg, genkill);
    ++units;
    if (!facts.phase2.contains_all_of(facts.phase1)) ++violations;
  };
  inspect(fig2_program());
  for (int i = 0; i < 300; ++i) inspect(cvtest::generate_rich_snippet(rng));
  for (int i = 0; i < 100; ++i) {
    inspect(cvtest::generate_mini_program(rng).source);
  }
  check.require(violations == 0, std::to_string(violations) + "/" +
                                     std::to_string(units) +
                                     " units violated phase monotonicity");
}

// ---- criterion 6: AST customization properties --------------------------------

void criterion_ast_properties(Check& check) {
  std::mt19937 rng(616161);
  int methods = 0;
  int strict_candidates = 0;

  auto leaf_labels = [](const CodeViewGraph& g) {
    std::set<int> parents;
    for (const GraphEdge& e : g.edges) parents.insert(e.src);
    std::multiset<std::string> out;
    for (const auto& [id, node] : g.nodes) {
      if (!parents.count(id)) out.insert(node.label);
    }
    return out;
  };

  for (int i = 0; i < 300 && check.failures().size() < 5; ++i) {
    auto u = cvtest::make_unit(cvtest::generate_rich_snippet(rng));
    CodeViewGraph ast = build_ast(u->cst);
    CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
    check.require(collapsed.nodes.size() <= ast.nodes.size(),
                  "collapse increased the node count");
    check.require(minimize_ast(ast, {}) == ast,
                  "empty-blacklist minimize is not the identity");
    CodeViewGraph minimized = minimize_ast(
        ast, {"parenthesized_expression", "binary_expression",
              "expression_statement", "local_variable_declaration"});
    check.require(leaf_labels(minimized) == leaf_labels(ast),
                  "minimize changed the leaf multiset");
    ++methods;
  }

  for (int i = 0; i < 250 && check.failures().size() < 5; ++i) {
    cvtest::MiniProgram p = cvtest::generate_mini_program(rng);
    // Count occurrences per variable in the model: declaration + defs + uses.
    std::map<std::string, int> occurrences;
    for (const cvtest::MiniStmt& s : p.stmts) {
      if (!s.var.empty()) ++occurrences[s.var];
      for (const std::string& use : s.uses) ++occurrences[use];
    }
    bool repeated = false;
    for (const auto& [var, n] : occurrences) repeated = repeated || n >= 2;

    auto u = cvtest::make_unit(p.source);
    CodeViewGraph ast = build_ast(u->cst);
    CodeViewGraph collapsed = collapse_ast(ast, u->cst, u->table);
    check.require(collapsed.nodes.size() <= ast.nodes.size(),
                  "collapse increased the node count");
    if (repeated) {
      ++strict_candidates;
      check.require(collapsed.nodes.size() < ast.nodes.size(),
                    "repeated variable did not strictly shrink the AST");
    }
    ++methods;
  }
  check.require(methods >= 500, "fewer than 500 corpus methods exercised");
  check.require(strict_candidates > 50, "too few repeated-variable fixtures");
}

// ---- criterion 7: corpus robustness -------------------------------------------

void criterion_robustness(Check& check) {
  std::mt19937 rng(717171);
  const int kSnippets = 1000;
  int syntax_errors = 0;
  int crashes = 0;
  int succeeded = 0;

  ViewConfig config;
  config.views = {View::Ast, View::Cfg, View::Dfg};
  config.ast.collapsed = true;
  config.dfg.last_def = true;
  config.dfg.last_use = true;

  for (int i = 0; i < kSnippets; ++i) {
    std::string snippet = cvtest::generate_rich_snippet(rng);
    if (i % 10 == 3) snippet = cvtest::corrupt_snippet(rng, snippet);
    SourceUnit unit;
    unit.text = snippet;
    try {
      CodeViewGraph g = generate_views(unit, config);
      (void)to_json(g);
      (void)to_dot(g);
      ++succeeded;
    } catch (const SyntaxError&) {
      ++syntax_errors;
    } catch (const EmptyInputError&) {
      ++syntax_errors;
    } catch (const std::exception& e) {
      ++crashes;
      if (crashes == 1) {
        check.require(false, std::string("unexpected failure: ") + e.what() +
                                 " on snippet:\n" + snippet.substr(0, 200));
      }
    }
  }
  check.require(crashes == 0, std::to_string(crashes) + " non-syntax failures");
  check.require(succeeded + syntax_errors == kSnippets, "snippet count mismatch");
  check.require(syntax_errors >= 50, "corrupted snippets were not exercised");
}

// ---- criterion 8: determinism ---------------------------------------------------

std::string run_cli(const std::string& cli, const std::string& args) {
  std::string command = cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  std::string out;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  pclose(pipe);
  return out;
}

void criterion_determinism(Check& check) {
  std::vector<std::pair<std::string, ViewConfig>> golden;
  {
    ViewConfig c;
    c.views = {View::Cfg, View::Dfg};
    golden.emplace_back(fig2_program(), c);
  }
  {
    ViewConfig c;
    c.views = {View::Ast};
    c.ast.collapsed = true;
    golden.emplace_back("class A { void f(int c) { int x = 0; x = x + c; } }", c);
  }
  {
    ViewConfig c;
    c.views = {View::Ast, View::Cfg, View::Dfg};
    c.dfg.last_def = true;
    c.dfg.last_use = true;
    golden.emplace_back("x=0; while(c){x=x+1;} r=x;", c);
  }
  {
    ViewConfig c;
    c.views = {View::Cfg};
    golden.emplace_back(
        "class A { void f(int x) { switch (x) { case 1: a = 1; break; default: b = 2; } "
        "try { risky(); } catch (Exception e) { handle(e); } finally { done(); } } }",
        c);
  }

  for (const auto& [text, config] : golden) {
    SourceUnit unit;
    unit.text = text;
    ViewConfig json_config = config;
    json_config.format = OutputFormat::Json;
    ViewConfig dot_config = config;
    dot_config.format = OutputFormat::Dot;
    std::string json_first = generate_serialized(unit, json_config);
    std::string dot_first = generate_serialized(unit, dot_config);
    for (int run = 0; run < 3; ++run) {
      check.require(generate_serialized(unit, json_config) == json_first,
                    "JSON bytes differ across runs");
      check.require(generate_serialized(unit, dot_config) == dot_first,
                    "DOT bytes differ across runs");
    }
    check.require(cvtest::check_dot(dot_first) == std::nullopt,
                  "golden DOT fails the grammar check");
  }

  // Cross-process: the CLI binary must agree with itself run-to-run.
  const char* cli = std::getenv("CODEVIEW_CLI");
  if (cli != nullptr && fs::exists(cli)) {
    fs::path fixture = fs::temp_directory_path() / "codeview_accept_fig2.java";
    std::ofstream(fixture, std::ios::binary) << fig2_program();
    std::string args = "--file " + fixture.string() + " --views cfg,dfg --format json";
    std::string first = run_cli(cli, args);
    check.require(!first.empty(), "CLI produced no output");
    for (int run = 0; run < 2; ++run) {
      check.require(run_cli(cli, args) == first, "CLI bytes differ across runs");
    }
  } else {
    check.require(false, "CODEVIEW_CLI not set; cross-process check skipped");
  }
}

// ---- criterion 9: combination algebra --------------------------------------------

void criterion_combination(Check& check) {
  // Ten-statement fixture.
  auto u = cvtest::make_unit(R"(class A {
  void f(int c) {
    int x = 0;
    int y = 1;
    if (c > 0) {
      x = x + y;
    } else {
      y = y + 2;
    }
    while (c > 3) {
      c = c - 4;
    }
    r = x + y + c;
  }
}
)");
  Cfg cfg = build_intraprocedural_cfg(u->cst, u->table);
  DfgResult dfg = build_dfg(cfg, u->table, {});
  CodeViewGraph ast = build_ast(u->cst);

  auto ids = [](const CodeViewGraph& g) {
    std::set<int> out;
    for (const auto& [id, node] : g.nodes) out.insert(id);
    return out;
  };
  auto keys = [](const CodeViewGraph& g) {
    std::set<std::tuple<int, int, int, int>> out;
    for (const GraphEdge& e : g.edges) out.insert(e.key());
    return out;
  };

  std::vector<std::vector<CodeViewGraph>> subsets = {
      {ast, cfg.graph},
      {ast, dfg.graph},
      {cfg.graph, dfg.graph},
      {ast, cfg.graph, dfg.graph},
  };
  for (const auto& subset : subsets) {
    CodeViewGraph combined = combine_views(subset);
    std::set<int> expected_ids;
    for (const CodeViewGraph& g : subset) {
      for (int id : ids(g)) expected_ids.insert(id);
    }
    check.require(ids(combined) == expected_ids,
                  "combined node set is not the id-keyed union");

    // Idempotence: re-combining with a member changes nothing.
    CodeViewGraph again = combine_views({combined, subset.back()});
    check.require(ids(again) == ids(combined) && keys(again) == keys(combined),
                  "combine is not idempotent");

    // Order-insensitivity after canonical sort.
    std::vector<CodeViewGraph> reversed(subset.rbegin(), subset.rend());
    CodeViewGraph swapped = combine_views(reversed);
    check.require(ids(swapped) == ids(combined) && keys(swapped) == keys(combined),
                  "combine is order-sensitive");
  }
}

struct Criterion {
  std::string name;
  CriterionFn fn;
  double time_limit_s;  // 0 = unlimited
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"two-class constructor wiring (D/E/F edges)", criterion_fig2, 1.0},
      {"dataflow equals path-enumeration oracle on 1000 programs",
       criterion_oracle, 60.0},
      {"loop data-flow regression fixture", criterion_loop, 0},
      {"inter-procedural write-back (reference vs primitive)",
       criterion_writeback, 0},
      {"phase-2 facts contain phase-1 facts", criterion_monotonicity, 0},
      {"AST customization properties over 500+ methods",
       criterion_ast_properties, 0},
      {"robustness over 1000 generated snippets", criterion_robustness, 600.0},
      {"byte-identical outputs across repeated runs", criterion_determinism, 0},
      {"view combination algebra", criterion_combination, 0},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    double elapsed = 0;
    try {
      elapsed = run_timed(criteria[i].fn, check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    if (criteria[i].time_limit_s > 0 && elapsed > criteria[i].time_limit_s) {
      check.require(false, "time limit exceeded: " + std::to_string(elapsed) +
                               "s > " + std::to_string(criteria[i].time_limit_s) +
                               "s");
    }
    if (check.failures().empty()) {
      std::printf("PASS: %zu - %s (%.2fs)\n", i + 1, criteria[i].name.c_str(),
                  elapsed);
    } else {
      ++failed;
      std::printf("FAIL: %zu - %s (%.2fs)\n", i + 1, criteria[i].name.c_str(),
                  elapsed);
      for (const std::string& f : check.failures()) {
        std::printf("      %s\n", f.c_str());
      }
    }
  }
  if (failed != 0) {
    std::printf("%d criterion(s) failed\n", failed);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
