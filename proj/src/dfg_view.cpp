#include "codeview/dfg_view.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace codeview {

namespace {

// ---- bitset helpers over std::vector<uint64_t> ----------------------------

using Bits = std::vector<uint64_t>;

Bits make_bits(size_t width) { return Bits((width + 63) / 64, 0); }

void set_bit(Bits& b, size_t i) { b[i / 64] |= (uint64_t{1} << (i % 64)); }
bool test_bit(const Bits& b, size_t i) {
  return (b[i / 64] >> (i % 64)) & 1;
}
bool or_into(Bits& dst, const Bits& src) {
  bool changed = false;
  for (size_t i = 0; i < dst.size(); ++i) {
    uint64_t merged = dst[i] | src[i];
    changed = changed || merged != dst[i];
    dst[i] = merged;
  }
  return changed;
}
Bits minus(const Bits& a, const Bits& b) {
  Bits out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] &= ~b[i];
  return out;
}
void or_assign(Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}
bool subset(const Bits& a, const Bits& b) {  // a subset of b
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

template <typename Fn>
void for_each_bit(const Bits& b, Fn&& fn) {
  for (size_t w = 0; w < b.size(); ++w) {
    uint64_t word = b[w];
    while (word != 0) {
      unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
      fn(w * 64 + bit);
      word &= word - 1;
    }
  }
}

// ---- def/use extraction ----------------------------------------------------

class DefUseExtractor {
 public:
  DefUseExtractor(const Cst& cst, const SymbolTable& table, int stmt_id)
      : cst_(cst), table_(table), stmt_(stmt_id) {}

  DefUse take() { return std::move(result_); }

  SymbolKey key_for(std::string_view name, uint32_t pos) const {
    if (auto e = table_.resolve_at(name, pos)) {
      return SymbolKey{*e, std::string(name)};
    }
    return SymbolKey{-1, std::string(name)};
  }

  SymbolKey key_for_node(int id) const {
    return key_for(cst_.slice(id), cst_.node(id).span.start);
  }

  void add_def(SymbolKey sym, bool weak, bool decl_only) {
    result_.defs.push_back(Definition{std::move(sym), stmt_, weak, decl_only});
  }

  void add_use(SymbolKey sym) { result_.uses.push_back(std::move(sym)); }

  void def_decl_entry(int name_node, bool decl_only) {
    if (auto e = table_.entry_of_decl_node(name_node)) {
      add_def(SymbolKey{*e, table_.entry(*e).name}, false, decl_only);
    } else {
      add_def(SymbolKey{-1, std::string(cst_.slice(name_node))}, false, decl_only);
    }
  }

  /// Leftmost identifier of an access chain (a.b[i].c -> a), -1 if none.
  int base_identifier(int node) const {
    int cur = node;
    while (cur >= 0) {
      const std::string& kind = cst_.node(cur).kind;
      if (kind == "identifier") return cur;
      if (kind == "field_access") {
        cur = cst_.child_by_field(cur, "object");
      } else if (kind == "array_access") {
        cur = cst_.child_by_field(cur, "array");
      } else if (kind == "parenthesized_expression") {
        auto inner = cst_.named_children(cur);
        cur = inner.empty() ? -1 : inner.front();
      } else {
        return -1;
      }
    }
    return -1;
  }

  void analyze_lhs(int node, bool compound) {
    const std::string& kind = cst_.node(node).kind;
    if (kind == "identifier") {
      SymbolKey sym = key_for_node(node);
      if (compound) add_use(sym);
      add_def(std::move(sym), false, false);
      return;
    }
    if (kind == "parenthesized_expression") {
      auto inner = cst_.named_children(node);
      if (!inner.empty()) analyze_lhs(inner.front(), compound);
      return;
    }
    if (kind == "field_access") {
      int object = cst_.child_by_field(node, "object");
      int field = cst_.child_by_field(node, "field");
      if (object >= 0 && cst_.node(object).kind == "this" && field >= 0) {
        // Direct member write through `this`.
        SymbolKey sym = key_for_node(field);
        if (compound) add_use(sym);
        add_def(std::move(sym), false, false);
        return;
      }
      if (object >= 0) {
        analyze(object);
        int base = base_identifier(object);
        if (base >= 0) add_def(key_for_node(base), /*weak=*/true, false);
      }
      return;
    }
    if (kind == "array_access") {
      int array = cst_.child_by_field(node, "array");
      int index = cst_.child_by_field(node, "index");
      if (array >= 0) {
        analyze(array);
        int base = base_identifier(array);
        if (base >= 0) add_def(key_for_node(base), /*weak=*/true, false);
      }
      if (index >= 0) analyze(index);
      return;
    }
    analyze(node);
  }

  void analyze(int node) {
    const std::string& kind = cst_.node(node).kind;

    if (kind == "identifier") {
      std::string_view name = cst_.slice(node);
      if (!table_.resolve_at(name, cst_.node(node).span.start)) {
        // A bare local type name (static receiver, etc.) is not a variable.
        const TypeInfo* t = table_.find_type(name);
        if (t != nullptr && !t->is_primitive && t->entry >= 0) return;
      }
      add_use(key_for_node(node));
      return;
    }
    if (kind == "assignment_expression") {
      int left = cst_.child_by_field(node, "left");
      int right = cst_.child_by_field(node, "right");
      std::string op;
      for (size_t i = 0; i < cst_.node(node).children.size(); ++i) {
        if (cst_.node(node).fields[i] == "operator") {
          op = std::string(cst_.slice(cst_.node(node).children[i]));
        }
      }
      if (right >= 0) analyze(right);
      if (left >= 0) analyze_lhs(left, op != "=");
      return;
    }
    if (kind == "update_expression") {
      auto inner = cst_.named_children(node);
      if (!inner.empty()) analyze_lhs(inner.front(), /*compound=*/true);
      return;
    }
    if (kind == "method_invocation") {
      int object = cst_.child_by_field(node, "object");
      if (object >= 0) {
        analyze(object);
        if (cst_.node(object).kind == "identifier") {
          // A resolved reference-typed receiver may be mutated by the call.
          SymbolKey sym = key_for_node(object);
          if (!sym.is_free() &&
              !table_.is_primitive_type(table_.entry(sym.entry).declared_type)) {
            add_def(std::move(sym), /*weak=*/true, false);
          }
        }
      }
      int arguments = cst_.child_by_field(node, "arguments");
      if (arguments >= 0) {
        for (int a : cst_.named_children(arguments)) analyze(a);
      }
      return;
    }
    if (kind == "object_creation_expression") {
      // Anonymous class bodies are separate callables, not part of this
      // statement's evaluation.
      int arguments = cst_.child_by_field(node, "arguments");
      if (arguments >= 0) {
        for (int a : cst_.named_children(arguments)) analyze(a);
      }
      return;
    }
    if (kind == "field_access") {
      int object = cst_.child_by_field(node, "object");
      int field = cst_.child_by_field(node, "field");
      if (object >= 0 && cst_.node(object).kind == "this" && field >= 0) {
        add_use(key_for_node(field));
        return;
      }
      if (object >= 0) analyze(object);
      return;
    }
    if (kind == "array_access") {
      int array = cst_.child_by_field(node, "array");
      int index = cst_.child_by_field(node, "index");
      if (array >= 0) analyze(array);
      if (index >= 0) analyze(index);
      return;
    }
    if (kind == "method_reference" || kind == "type_arguments" ||
        kind == "this" || kind == "super") {
      return;
    }
    for (int c : cst_.named_children(node)) analyze(c);
  }

 private:
  const Cst& cst_;
  const SymbolTable& table_;
  int stmt_;
  DefUse result_;
};

void dedup_defuse(DefUse& du) {
  std::sort(du.defs.begin(), du.defs.end());
  du.defs.erase(std::unique(du.defs.begin(), du.defs.end()), du.defs.end());
  std::sort(du.uses.begin(), du.uses.end());
  du.uses.erase(std::unique(du.uses.begin(), du.uses.end()), du.uses.end());
}

}  // namespace

DefUse extract_defs_uses(const Cfg& cfg, int stmt_id, const SymbolTable& table) {
  assert(cfg.cst != nullptr);
  const Cst& cst = *cfg.cst;
  const CfgStatementInfo& info = cfg.info.at(stmt_id);
  DefUseExtractor ex(cst, table, stmt_id);

  if (info.cst_node < 0) {
    // Synthetic node: the entry defines every parameter.
    if (info.callable >= 0) {
      const CfgCallable& callable = cfg.callables[static_cast<size_t>(info.callable)];
      if (callable.entry == stmt_id) {
        for (int pname : callable.param_name_nodes) {
          ex.def_decl_entry(pname, /*decl_only=*/false);
        }
      }
    }
    DefUse du = ex.take();
    dedup_defuse(du);
    return du;
  }

  const std::string& kind = cst.node(info.cst_node).kind;
  if (kind == "local_variable_declaration" || kind == "field_declaration" ||
      kind == "resource") {
    for (int c : cst.named_children(info.cst_node)) {
      if (cst.node(c).kind != "variable_declarator") continue;
      int name = cst.child_by_field(c, "name");
      int value = cst.child_by_field(c, "value");
      if (name >= 0 && cst.node(name).kind == "identifier") {
        ex.def_decl_entry(name, /*decl_only=*/value < 0);
      }
      if (value >= 0) ex.analyze(value);
    }
    if (kind == "resource") {
      int name = cst.child_by_field(info.cst_node, "name");
      int value = cst.child_by_field(info.cst_node, "value");
      if (name >= 0 && cst.node(name).kind == "identifier") {
        ex.def_decl_entry(name, value < 0);
      }
      if (value >= 0) ex.analyze(value);
    }
  } else if (kind == "enhanced_for_statement") {
    int name = cst.child_by_field(info.cst_node, "name");
    if (name >= 0) ex.def_decl_entry(name, /*decl_only=*/false);
    for (int root : owned_expression_roots(cst, info.cst_node)) ex.analyze(root);
  } else if (kind == "catch_clause") {
    for (int c : cst.named_children(info.cst_node)) {
      if (cst.node(c).kind != "catch_formal_parameter") continue;
      int name = cst.child_by_field(c, "name");
      if (name >= 0) ex.def_decl_entry(name, /*decl_only=*/false);
    }
  } else {
    for (int root : owned_expression_roots(cst, info.cst_node)) ex.analyze(root);
  }

  DefUse du = ex.take();
  dedup_defuse(du);
  return du;
}

std::map<int, DefUse> compute_gen_kill(const Cfg& cfg, const SymbolTable& table) {
  std::map<int, DefUse> out;
  for (const auto& [id, info] : cfg.info) {
    out.emplace(id, extract_defs_uses(cfg, id, table));
  }
  return out;
}

// ---- alias sets ------------------------------------------------------------

void AliasSets::unite(int a, int b) {
  int ra = find(a);
  int rb = find(b);
  if (ra == rb) return;
  if (ra > rb) std::swap(ra, rb);
  parent_[rb] = ra;  // smaller id becomes the representative
}

int AliasSets::find(int entry) const {
  auto it = parent_.find(entry);
  if (it == parent_.end()) return entry;
  int root = entry;
  while (true) {
    auto pit = parent_.find(root);
    if (pit == parent_.end() || pit->second == root) break;
    root = pit->second;
  }
  // Path compression.
  int cur = entry;
  while (cur != root) {
    int next = parent_[cur];
    parent_[cur] = root;
    cur = next;
  }
  return root;
}

bool AliasSets::may_alias(int a, int b) const {
  if (a == b) return true;
  return find(a) == find(b);
}

std::vector<std::vector<int>> AliasSets::sets() const {
  std::map<int, std::vector<int>> by_root;
  std::set<int> members;
  for (const auto& [k, v] : parent_) {
    members.insert(k);
    members.insert(v);
  }
  for (int m : members) by_root[find(m)].push_back(m);
  std::vector<std::vector<int>> out;
  for (auto& [root, set] : by_root) {
    if (set.size() < 2) continue;
    std::sort(set.begin(), set.end());
    out.push_back(std::move(set));
  }
  return out;
}

namespace {

/// Resolved reference-typed entry of a bare identifier (possibly wrapped in
/// parens/casts), -1 otherwise.
int reference_entry_of(const Cst& cst, const SymbolTable& table, int node) {
  const std::string& kind = cst.node(node).kind;
  if (kind == "parenthesized_expression") {
    auto inner = cst.named_children(node);
    return inner.empty() ? -1 : reference_entry_of(cst, table, inner.front());
  }
  if (kind == "cast_expression") {
    int value = cst.child_by_field(node, "value");
    return value < 0 ? -1 : reference_entry_of(cst, table, value);
  }
  if (kind != "identifier") return -1;
  auto e = table.resolve_at(cst.slice(node), cst.node(node).span.start);
  if (!e) return -1;
  const SymbolEntry& entry = table.entry(*e);
  if (entry.declared_type.empty()) return -1;
  if (table.is_primitive_type(entry.declared_type)) return -1;
  return *e;
}

void collect_copy_unions(const Cst& cst, const SymbolTable& table, int node,
                         AliasSets& aliases) {
  const std::string& kind = cst.node(node).kind;
  if (kind == "assignment_expression") {
    int left = cst.child_by_field(node, "left");
    int right = cst.child_by_field(node, "right");
    std::string op;
    for (size_t i = 0; i < cst.node(node).children.size(); ++i) {
      if (cst.node(node).fields[i] == "operator") {
        op = std::string(cst.slice(cst.node(node).children[i]));
      }
    }
    if (op == "=" && left >= 0 && right >= 0 &&
        cst.node(left).kind == "identifier") {
      int a = reference_entry_of(cst, table, left);
      int b = reference_entry_of(cst, table, right);
      if (a >= 0 && b >= 0) aliases.unite(a, b);
    }
  }
  for (int c : cst.node(node).children) {
    collect_copy_unions(cst, table, c, aliases);
  }
}

}  // namespace

AliasSets compute_alias_sets(const Cfg& cfg, const SymbolTable& table,
                             bool interprocedural) {
  assert(cfg.cst != nullptr);
  const Cst& cst = *cfg.cst;
  AliasSets aliases;

  for (const auto& [id, info] : cfg.info) {
    if (info.cst_node < 0) continue;
    const std::string& kind = cst.node(info.cst_node).kind;
    if (kind == "local_variable_declaration" || kind == "field_declaration" ||
        kind == "resource") {
      for (int c : cst.named_children(info.cst_node)) {
        if (cst.node(c).kind != "variable_declarator") continue;
        int name = cst.child_by_field(c, "name");
        int value = cst.child_by_field(c, "value");
        if (name < 0 || value < 0) continue;
        int a = name >= 0 ? reference_entry_of(cst, table, name) : -1;
        int b = reference_entry_of(cst, table, value);
        if (a >= 0 && b >= 0) aliases.unite(a, b);
      }
    }
    for (int root : owned_expression_roots(cst, info.cst_node)) {
      collect_copy_unions(cst, table, root, aliases);
    }
  }

  if (interprocedural) {
    for (const CallSite& call : cfg.calls) {
      if (call.callee < 0) continue;
      const CfgCallable& callee = cfg.callables[static_cast<size_t>(call.callee)];
      int arguments = cst.child_by_field(call.call_node, "arguments");
      if (arguments < 0) continue;
      std::vector<int> args = cst.named_children(arguments);
      for (size_t i = 0; i < args.size() && i < callee.param_name_nodes.size(); ++i) {
        int arg_entry = reference_entry_of(cst, table, args[i]);
        if (arg_entry < 0) continue;
        auto param = table.entry_of_decl_node(callee.param_name_nodes[i]);
        if (!param) continue;
        const SymbolEntry& pe = table.entry(*param);
        if (pe.declared_type.empty() || table.is_primitive_type(pe.declared_type)) {
          continue;  // pass-by-value: primitives never alias
        }
        aliases.unite(arg_entry, *param);
      }
    }
  }
  return aliases;
}

// ---- reaching definitions ---------------------------------------------------

namespace {

bool is_interprocedural_kind(EdgeKind kind) {
  return kind == EdgeKind::ConstructorCall || kind == EdgeKind::ClassReturn ||
         kind == EdgeKind::MethodCall || kind == EdgeKind::MethodReturn;
}

struct UseEvent {
  SymbolKey sym;
  int site = -1;

  bool operator==(const UseEvent&) const = default;
  auto operator<=>(const UseEvent&) const = default;
};

}  // namespace

bool RdaFacts::in_contains(int node, const Definition& def) const {
  auto it = in.find(node);
  if (it == in.end()) return false;
  auto pos = std::lower_bound(universe.begin(), universe.end(), def);
  if (pos == universe.end() || !(*pos == def)) return false;
  return test_bit(it->second, static_cast<size_t>(pos - universe.begin()));
}

std::vector<Definition> RdaFacts::in_defs(int node) const {
  std::vector<Definition> out_defs;
  auto it = in.find(node);
  if (it == in.end()) return out_defs;
  for_each_bit(it->second, [&](size_t i) { out_defs.push_back(universe[i]); });
  return out_defs;
}

std::vector<Definition> RdaFacts::out_defs(int node) const {
  std::vector<Definition> defs;
  auto it = out.find(node);
  if (it == out.end()) return defs;
  for_each_bit(it->second, [&](size_t i) { defs.push_back(universe[i]); });
  return defs;
}

bool RdaFacts::contains_all_of(const RdaFacts& other) const {
  if (universe != other.universe) return false;
  for (const auto& [node, bits] : other.in) {
    auto it = in.find(node);
    if (it == in.end() || !subset(bits, it->second)) return false;
  }
  for (const auto& [node, bits] : other.out) {
    auto it = out.find(node);
    if (it == out.end() || !subset(bits, it->second)) return false;
  }
  return true;
}

RdaFacts solve_rda(const Cfg& cfg, const std::map<int, DefUse>& genkill,
                   bool interprocedural_edges, const RdaFacts* seed) {
  RdaFacts facts;
  facts.interprocedural = interprocedural_edges;

  // Definition universe, sorted for stable bit positions.
  for (const auto& [id, du] : genkill) {
    for (const Definition& d : du.defs) facts.universe.push_back(d);
  }
  std::sort(facts.universe.begin(), facts.universe.end());
  facts.universe.erase(std::unique(facts.universe.begin(), facts.universe.end()),
                       facts.universe.end());
  const size_t width = facts.universe.size();

  auto index_of = [&](const Definition& d) {
    auto pos = std::lower_bound(facts.universe.begin(), facts.universe.end(), d);
    return static_cast<size_t>(pos - facts.universe.begin());
  };

  // Defs per symbol, and per (symbol, site).
  std::map<SymbolKey, Bits> defs_of_symbol;
  for (size_t i = 0; i < width; ++i) {
    auto it = defs_of_symbol.find(facts.universe[i].sym);
    if (it == defs_of_symbol.end()) {
      it = defs_of_symbol.emplace(facts.universe[i].sym, make_bits(width)).first;
    }
    set_bit(it->second, i);
  }

  // GEN/KILL bitsets.
  for (const auto& [id, du] : genkill) {
    Bits gen = make_bits(width);
    Bits kill = make_bits(width);
    for (const Definition& d : du.defs) {
      size_t i = index_of(d);
      set_bit(gen, i);
      if (!d.weak) {
        // Strong update: all other definitions of this symbol die here.
        Bits others = defs_of_symbol.at(d.sym);
        others[i / 64] &= ~(uint64_t{1} << (i % 64));
        or_assign(kill, others);
      }
    }
    // A statement never kills what it generates.
    kill = minus(kill, gen);
    facts.gen.emplace(id, std::move(gen));
    facts.kill.emplace(id, std::move(kill));
  }

  // Predecessor lists over the selected edge relation.
  std::map<int, std::vector<int>> preds;
  for (const GraphEdge& e : cfg.graph.edges) {
    if (e.view != View::Cfg) continue;
    if (!interprocedural_edges && is_interprocedural_kind(e.kind)) continue;
    preds[e.dst].push_back(e.src);
  }
  for (auto& [id, p] : preds) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  std::map<int, std::vector<int>> succs;
  for (const auto& [dst, ps] : preds) {
    for (int src : ps) succs[src].push_back(dst);
  }

  // Init and worklist.
  std::deque<int> worklist;
  std::set<int> queued;
  for (const auto& [id, node] : cfg.graph.nodes) {
    Bits in_bits = make_bits(width);
    Bits out_bits = make_bits(width);
    if (seed != nullptr) {
      auto sit = seed->in.find(id);
      if (sit != seed->in.end()) in_bits = sit->second;
      auto sot = seed->out.find(id);
      if (sot != seed->out.end()) out_bits = sot->second;
    }
    facts.in.emplace(id, std::move(in_bits));
    facts.out.emplace(id, std::move(out_bits));
    worklist.push_back(id);
    queued.insert(id);
  }

  while (!worklist.empty()) {
    int id = worklist.front();
    worklist.pop_front();
    queued.erase(id);
    ++facts.iterations;

    Bits& in_bits = facts.in.at(id);
    auto pit = preds.find(id);
    if (pit != preds.end()) {
      for (int p : pit->second) or_into(in_bits, facts.out.at(p));
    }
    Bits new_out = minus(in_bits, facts.kill.at(id));
    or_assign(new_out, facts.gen.at(id));

    Bits& out_bits = facts.out.at(id);
    if (or_into(out_bits, new_out)) {
      auto sit = succs.find(id);
      if (sit != succs.end()) {
        for (int s : sit->second) {
          if (queued.insert(s).second) worklist.push_back(s);
        }
      }
    }
  }
  return facts;
}

TwoPhaseFacts run_two_phase_rda(const Cfg& cfg,
                                const std::map<int, DefUse>& genkill) {
  TwoPhaseFacts facts;
  facts.phase1 = solve_rda(cfg, genkill, /*interprocedural_edges=*/false);
  facts.phase2 = solve_rda(cfg, genkill, /*interprocedural_edges=*/true,
                           &facts.phase1);
  return facts;
}

std::vector<GraphEdge> build_dfg_edges(const Cfg& cfg, const RdaFacts& facts,
                                       const std::map<int, DefUse>& genkill,
                                       const AliasSets& aliases) {
  std::vector<GraphEdge> edges;
  std::set<std::pair<int, int>> seen;
  for (const auto& [id, du] : genkill) {
    if (du.uses.empty()) continue;
    auto in_it = facts.in.find(id);
    if (in_it == facts.in.end()) continue;
    for (const SymbolKey& use : du.uses) {
      for_each_bit(in_it->second, [&](size_t i) {
        const Definition& d = facts.universe[i];
        bool matches = d.sym == use;
        if (!matches && !d.sym.is_free() && !use.is_free()) {
          matches = aliases.may_alias(d.sym.entry, use.entry);
        }
        if (matches && seen.insert({d.site, id}).second) {
          edges.push_back({d.site, id, View::Dfg, EdgeKind::DataFlow});
        }
      });
    }
  }
  return edges;
}

std::vector<GraphEdge> add_lastdef_lastuse(const Cfg& cfg, const RdaFacts& facts,
                                           const std::map<int, DefUse>& genkill,
                                           const DfgOptions& options) {
  std::vector<GraphEdge> edges;
  if (!options.last_def && !options.last_use) return edges;

  if (options.last_def) {
    std::set<std::pair<int, int>> seen;
    for (const auto& [id, du] : genkill) {
      if (du.defs.empty()) continue;
      auto in_it = facts.in.find(id);
      if (in_it == facts.in.end()) continue;
      std::set<SymbolKey> defined;
      for (const Definition& d : du.defs) defined.insert(d.sym);
      for_each_bit(in_it->second, [&](size_t i) {
        const Definition& prior = facts.universe[i];
        if (defined.count(prior.sym) && seen.insert({prior.site, id}).second) {
          edges.push_back({prior.site, id, View::Dfg, EdgeKind::LastDef});
        }
      });
    }
  }

  if (options.last_use) {
    // Reaching uses: GEN = reads; a read of v kills prior reads of v
    // (chaining to the most recent read on each path); a strong definition
    // of v kills reads of v as well.
    std::vector<UseEvent> universe;
    for (const auto& [id, du] : genkill) {
      for (const SymbolKey& u : du.uses) universe.push_back({u, id});
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    const size_t width = universe.size();

    std::map<SymbolKey, Bits> uses_of_symbol;
    for (size_t i = 0; i < width; ++i) {
      auto it = uses_of_symbol.find(universe[i].sym);
      if (it == uses_of_symbol.end()) {
        it = uses_of_symbol.emplace(universe[i].sym, make_bits(width)).first;
      }
      set_bit(it->second, i);
    }
    auto index_of = [&](const UseEvent& u) {
      auto pos = std::lower_bound(universe.begin(), universe.end(), u);
      return static_cast<size_t>(pos - universe.begin());
    };

    std::map<int, Bits> gen, kill;
    for (const auto& [id, du] : genkill) {
      Bits g = make_bits(width);
      Bits k = make_bits(width);
      for (const SymbolKey& u : du.uses) {
        size_t i = index_of({u, id});
        set_bit(g, i);
        or_assign(k, uses_of_symbol.at(u));  // chaining: reads kill prior reads
      }
      for (const Definition& d : du.defs) {
        if (d.weak) continue;
        auto it = uses_of_symbol.find(d.sym);
        if (it != uses_of_symbol.end()) or_assign(k, it->second);
      }
      k = minus(k, g);
      gen.emplace(id, std::move(g));
      kill.emplace(id, std::move(k));
    }

    std::map<int, std::vector<int>> preds;
    for (const GraphEdge& e : cfg.graph.edges) {
      if (e.view != View::Cfg) continue;
      if (!facts.interprocedural && is_interprocedural_kind(e.kind)) continue;
      preds[e.dst].push_back(e.src);
    }
    std::map<int, std::vector<int>> succs;
    for (auto& [dst, ps] : preds) {
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      for (int src : ps) succs[src].push_back(dst);
    }

    std::map<int, Bits> in, out;
    std::deque<int> worklist;
    std::set<int> queued;
    for (const auto& [id, node] : cfg.graph.nodes) {
      in.emplace(id, make_bits(width));
      out.emplace(id, make_bits(width));
      worklist.push_back(id);
      queued.insert(id);
    }
    while (!worklist.empty()) {
      int id = worklist.front();
      worklist.pop_front();
      queued.erase(id);
      Bits& in_bits = in.at(id);
      auto pit = preds.find(id);
      if (pit != preds.end()) {
        for (int p : pit->second) or_into(in_bits, out.at(p));
      }
      Bits new_out = minus(in_bits, kill.at(id));
      or_assign(new_out, gen.at(id));
      if (or_into(out.at(id), new_out)) {
        auto sit = succs.find(id);
        if (sit != succs.end()) {
          for (int s : sit->second) {
            if (queued.insert(s).second) worklist.push_back(s);
          }
        }
      }
    }

    std::set<std::pair<int, int>> seen;
    for (const auto& [id, du] : genkill) {
      if (du.uses.empty()) continue;
      std::set<SymbolKey> used(du.uses.begin(), du.uses.end());
      for_each_bit(in.at(id), [&](size_t i) {
        const UseEvent& prior = universe[i];
        if (used.count(prior.sym) && seen.insert({prior.site, id}).second) {
          edges.push_back({prior.site, id, View::Dfg, EdgeKind::LastUse});
        }
      });
    }
  }
  return edges;
}

DfgResult build_dfg(const Cfg& cfg, const SymbolTable& table,
                    const DfgOptions& options) {
  DfgResult result;
  std::map<int, DefUse> genkill = compute_gen_kill(cfg, table);
  AliasSets aliases = compute_alias_sets(cfg, table, cfg.interprocedural);

  result.two_phase = cfg.interprocedural;
  if (result.two_phase) {
    TwoPhaseFacts phases = run_two_phase_rda(cfg, genkill);
    result.phase1 = std::move(phases.phase1);
    result.phase2 = std::move(phases.phase2);
  } else {
    result.phase1 = solve_rda(cfg, genkill, false);
    result.phase2 = result.phase1;
  }

  result.graph.views.insert(View::Dfg);
  result.graph.meta = cfg.graph.meta;
  for (const auto& [id, node] : cfg.graph.nodes) result.graph.add_node(node);

  for (const GraphEdge& e :
       build_dfg_edges(cfg, result.phase2, genkill, aliases)) {
    result.graph.add_edge(e);
  }

  // Return-value flow: when a call's result is assigned, the callee's
  // value-bearing return statements feed the invoking statement.
  if (cfg.interprocedural && cfg.cst != nullptr) {
    for (const CallSite& call : cfg.calls) {
      if (!call.assigns_result || call.callee < 0 || call.is_constructor) continue;
      const CfgCallable& callee = cfg.callables[static_cast<size_t>(call.callee)];
      for (int stmt : callee.statements) {
        const GraphNode& node = result.graph.nodes.at(stmt);
        if (node.kind != "return") continue;
        int cst_node = cfg.info.at(stmt).cst_node;
        if (cst_node < 0 || cfg.cst->named_children(cst_node).empty()) continue;
        result.graph.add_edge({stmt, call.statement, View::Dfg, EdgeKind::DataFlow});
      }
    }
  }

  for (const GraphEdge& e :
       add_lastdef_lastuse(cfg, result.phase2, genkill, options)) {
    result.graph.add_edge(e);
  }
  return result;
}

}  // namespace codeview
