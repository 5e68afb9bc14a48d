#pragma once

#include <map>
#include <string>
#include <vector>

#include "codeview/cfg_view.hpp"
#include "codeview/symbol_table.hpp"

namespace codeview {

/// Dataflow symbol: a resolved table entry, or a raw name for free
/// variables (undeclared identifiers in incomplete snippets).
struct SymbolKey {
  int entry = -1;
  std::string name;

  bool is_free() const { return entry < 0; }
  friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
  friend auto operator<=>(const SymbolKey&, const SymbolKey&) = default;
};

struct Definition {
  SymbolKey sym;
  int site = -1;          // statement node id
  bool weak = false;      // mutation through a reference: gens without kill
  bool decl_only = false; // declaration without initializer

  friend bool operator==(const Definition&, const Definition&) = default;
  friend auto operator<=>(const Definition& a, const Definition& b) {
    return std::tie(a.site, a.sym, a.weak, a.decl_only) <=>
           std::tie(b.site, b.sym, b.weak, b.decl_only);
  }
};

struct DefUse {
  std::vector<Definition> defs;
  std::vector<SymbolKey> uses;
};

/// Syntactic definitions and uses of one statement node: assignment targets,
/// initialized declarations, compound assignments, increments/decrements,
/// parameters at the entry node; element/field writes def the base variable
/// weakly and use it. Reference-typed call receivers count as weak
/// definitions (the callee may mutate the object).
DefUse extract_defs_uses(const Cfg& cfg, int stmt_id, const SymbolTable& table);

/// extract_defs_uses over every statement, keyed by node id.
std::map<int, DefUse> compute_gen_kill(const Cfg& cfg, const SymbolTable& table);

/// Flow-insensitive may-alias partition over reference-typed entries:
/// reference-to-reference copies union their sides; with `interprocedural`,
/// reference arguments union with the matching parameter.
class AliasSets {
 public:
  void unite(int a, int b);
  int find(int entry) const;
  bool may_alias(int a, int b) const;
  /// Non-trivial sets (size >= 2), each sorted, ordered by first member.
  std::vector<std::vector<int>> sets() const;

 private:
  mutable std::map<int, int> parent_;
};

AliasSets compute_alias_sets(const Cfg& cfg, const SymbolTable& table,
                             bool interprocedural);

/// Per-statement fixed-point facts over a finite definition universe.
struct RdaFacts {
  std::vector<Definition> universe;  // sorted, unique; bit index = position
  std::map<int, std::vector<uint64_t>> gen, kill, in, out;
  size_t iterations = 0;  // worklist pops until convergence
  bool interprocedural = false;

  bool in_contains(int node, const Definition& def) const;
  std::vector<Definition> in_defs(int node) const;
  std::vector<Definition> out_defs(int node) const;
  /// True when `other`'s IN/OUT are statement-wise subsets of ours.
  bool contains_all_of(const RdaFacts& other) const;
};

/// Worklist least fixed point of IN = union of predecessor OUTs,
/// OUT = GEN + (IN - KILL). `interprocedural_edges` selects whether
/// call/return edges propagate facts. `seed` continues from previous facts.
RdaFacts solve_rda(const Cfg& cfg, const std::map<int, DefUse>& genkill,
                   bool interprocedural_edges, const RdaFacts* seed = nullptr);

struct TwoPhaseFacts {
  RdaFacts phase1;  // per-method fixed point
  RdaFacts phase2;  // re-run including call/return edges
};

TwoPhaseFacts run_two_phase_rda(const Cfg& cfg,
                                const std::map<int, DefUse>& genkill);

/// def -> use edges: for every used symbol at a statement, one edge per
/// reaching definition of that symbol or of a may-alias of it.
std::vector<GraphEdge> build_dfg_edges(const Cfg& cfg, const RdaFacts& facts,
                                       const std::map<int, DefUse>& genkill,
                                       const AliasSets& aliases);

struct DfgOptions {
  bool last_def = false;
  bool last_use = false;
};

/// Optional relations: "last_def" links a (re)definition to the reaching
/// prior definitions of the same symbol; "last_use" chains each read to the
/// most recent prior read on every path (reads are killed by redefinition).
std::vector<GraphEdge> add_lastdef_lastuse(const Cfg& cfg, const RdaFacts& facts,
                                           const std::map<int, DefUse>& genkill,
                                           const DfgOptions& options);

struct DfgResult {
  CodeViewGraph graph;  // CFG node set with dataflow edges
  RdaFacts phase1;
  RdaFacts phase2;  // equals phase1 for intra-procedural units
  bool two_phase = false;
};

DfgResult build_dfg(const Cfg& cfg, const SymbolTable& table,
                    const DfgOptions& options = {});

}  // namespace codeview
