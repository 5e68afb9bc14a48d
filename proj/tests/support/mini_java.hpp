#pragma once

#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace cvtest {

/// One statement of a generated mini-program. Statement texts are unique
/// within a program (every literal is fresh), so graph nodes can be matched
/// back to the model by label.
struct MiniStmt {
  enum class Kind { Decl, DeclInit, Assign, Compound, IfHeader, WhileHeader };
  Kind kind = Kind::Assign;
  std::string var;                // defined variable ("" for headers)
  std::vector<std::string> uses;  // variables read
  std::string text;               // statement text / header label
  int index = -1;
};

struct MiniItem;

struct MiniBlock {
  std::vector<MiniItem> items;
};

struct MiniItem {
  enum class Type { Leaf, If, While };
  Type type = Type::Leaf;
  int stmt = -1;  // model index (leaf statement or control header)
  std::unique_ptr<MiniBlock> then_branch;  // If
  std::unique_ptr<MiniBlock> else_branch;  // If, may be null
  std::unique_ptr<MiniBlock> body;         // While
};

/// Straight-line + if + (at most one) while programs over int variables:
/// the shape whose reaching definitions a bounded path enumeration computes
/// exactly.
struct MiniProgram {
  std::string source;  // full compilable class
  std::vector<MiniStmt> stmts;
  MiniBlock root;
  std::vector<std::string> vars;
};

MiniProgram generate_mini_program(std::mt19937& rng, int max_stmts = 12,
                                  int max_vars = 4, bool allow_while = true);

/// Independent reaching-definitions oracle over the generator's own model:
/// enumerates every path with the loop body taken 0, 1 or 2 times and
/// records per-visit facts. Never consults the analysis under test.
struct OracleResult {
  std::set<std::pair<int, int>> def_use_edges;  // (def stmt, use stmt) indices
  // reaching definitions at each statement: (variable, def site) pairs
  std::vector<std::set<std::pair<std::string, int>>> reaching;
};

OracleResult run_rda_oracle(const MiniProgram& program);

/// Diverse method-level snippet for robustness/property testing: strings,
/// arrays, loops, calls to unknown APIs, free variables, try/catch, ...
/// Returns parseable Java with probability ~1; corrupt() makes it invalid.
std::string generate_rich_snippet(std::mt19937& rng);
std::string corrupt_snippet(std::mt19937& rng, std::string snippet);

}  // namespace cvtest
