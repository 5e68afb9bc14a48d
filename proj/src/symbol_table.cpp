#include "codeview/symbol_table.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <set>

namespace codeview {

namespace {

constexpr std::array<std::string_view, 8> kPrimitiveNames = {
    "byte", "short", "int", "long", "float", "double", "boolean", "char"};

bool is_type_declaration_kind(std::string_view kind) {
  return kind == "class_declaration" || kind == "interface_declaration" ||
         kind == "enum_declaration" || kind == "record_declaration" ||
         kind == "annotation_type_declaration";
}

/// Strips type arguments: "List<String>" -> "List". Used only for hierarchy
/// and member lookup; signatures keep the text as written.
std::string base_type_name(std::string_view text) {
  size_t lt = text.find('<');
  std::string out(lt == std::string_view::npos ? text : text.substr(0, lt));
  while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) out.pop_back();
  return out;
}

}  // namespace

class SymbolTableBuilder {
 public:
  explicit SymbolTableBuilder(const Cst& cst) : cst_(cst) {
    Scope global;
    global.id = 0;
    global.parent = -1;
    global.kind = ScopeKind::Global;
    global.span = Span{0, static_cast<uint32_t>(cst.text().size())};
    table_.scopes_.push_back(global);
    for (std::string_view name : kPrimitiveNames) {
      TypeInfo prim;
      prim.name = std::string(name);
      prim.is_primitive = true;
      table_.type_index_.emplace(prim.name, static_cast<int>(table_.types_.size()));
      table_.types_.push_back(std::move(prim));
    }
  }

  SymbolTable run() {
    walk(cst_.root());
    return std::move(table_);
  }

 private:
  int push_scope(ScopeKind kind, Span span) {
    Scope s;
    s.id = static_cast<int>(table_.scopes_.size());
    s.parent = scope_stack_.empty() ? 0 : scope_stack_.back();
    s.kind = kind;
    s.span = span;
    table_.scopes_.push_back(s);
    scope_stack_.push_back(s.id);
    return s.id;
  }

  void pop_scope() { scope_stack_.pop_back(); }

  int current_scope() const { return scope_stack_.empty() ? 0 : scope_stack_.back(); }
  int current_type() const { return type_stack_.empty() ? -1 : type_stack_.back(); }

  int add_entry(std::string name, SymbolKind kind, std::string declared_type,
                int name_node) {
    SymbolEntry e;
    e.id = static_cast<int>(table_.entries_.size());
    e.name = std::move(name);
    e.kind = kind;
    e.declared_type = std::move(declared_type);
    e.scope = current_scope();
    e.decl_span = name_node >= 0 ? cst_.node(name_node).span : Span{};
    e.decl_node = name_node;
    e.owner_type = current_type();
    table_.entries_.push_back(e);
    table_.scope_names_[{e.scope, table_.entries_.back().name}].push_back(e.id);
    if (name_node >= 0) table_.decl_node_entries_[name_node] = e.id;
    if (e.owner_type >= 0) {
      table_.types_[static_cast<size_t>(e.owner_type)].members.push_back(e.id);
    }
    return e.id;
  }

  std::string field_slice(int node, std::string_view field) const {
    int child = cst_.child_by_field(node, field);
    return child >= 0 ? std::string(cst_.slice(child)) : std::string();
  }

  void collect_supertypes(int decl, TypeInfo& info) const {
    int super = cst_.child_by_field(decl, "superclass");
    if (super >= 0) {
      for (int c : cst_.named_children(super)) {
        info.supertypes.push_back(std::string(cst_.slice(c)));
      }
    }
    int interfaces = cst_.child_by_field(decl, "interfaces");
    if (interfaces >= 0) {
      // super_interfaces -> type_list -> type nodes
      for (int list : cst_.named_children(interfaces)) {
        for (int c : cst_.named_children(list)) {
          info.supertypes.push_back(std::string(cst_.slice(c)));
        }
        if (cst_.node(list).kind != "type_list") {
          // single type directly under super_interfaces
          info.supertypes.push_back(std::string(cst_.slice(list)));
        }
      }
    }
  }

  void walk_type_declaration(int node) {
    int name_node = cst_.child_by_field(node, "name");
    std::string name = name_node >= 0 ? std::string(cst_.slice(name_node))
                                      : std::string("<anonymous>");
    int entry = add_entry(name, SymbolKind::Type, "", name_node);

    TypeInfo info;
    info.name = name;
    info.entry = entry;
    info.decl_node = node;
    collect_supertypes(node, info);
    int type_idx = static_cast<int>(table_.types_.size());
    // Shadow any same-named earlier type deterministically: first wins.
    table_.type_index_.emplace(info.name, type_idx);
    table_.types_.push_back(std::move(info));

    push_scope(ScopeKind::Type, cst_.node(node).span);
    type_stack_.push_back(type_idx);
    int body = cst_.child_by_field(node, "body");
    if (body >= 0) walk(body);
    type_stack_.pop_back();
    pop_scope();
  }

  void walk_callable(int node, SymbolKind kind) {
    int name_node = cst_.child_by_field(node, "name");
    std::string name = name_node >= 0 ? std::string(cst_.slice(name_node))
                                      : std::string("<lambda>");
    Signature sig;
    sig.name = name;
    int params = cst_.child_by_field(node, "parameters");
    if (params >= 0) {
      for (int p : cst_.named_children(params)) {
        const std::string& pk = cst_.node(p).kind;
        if (pk == "formal_parameter") {
          sig.param_types.push_back(field_slice(p, "type"));
        } else if (pk == "spread_parameter") {
          std::string t;
          for (int c : cst_.named_children(p)) {
            if (cst_.node(c).kind != "variable_declarator") {
              t = std::string(cst_.slice(c));
              break;
            }
          }
          sig.param_types.push_back(t + "...");
        } else if (pk == "receiver_parameter") {
          continue;  // "this" receiver annotation, not a value parameter
        }
      }
    }
    sig.arity = static_cast<int>(sig.param_types.size());

    std::string declared_type = kind == SymbolKind::Constructor
                                    ? name
                                    : field_slice(node, "type");
    int id = add_entry(name, kind, declared_type, name_node);
    table_.entries_[static_cast<size_t>(id)].signature = std::move(sig);

    push_scope(ScopeKind::Method, cst_.node(node).span);
    if (params >= 0) walk(params);
    int body = cst_.child_by_field(node, "body");
    if (body >= 0) walk(body);
    pop_scope();
  }

  void walk_variable_declaration(int node, SymbolKind kind) {
    std::string type_text = field_slice(node, "type");
    for (int c : cst_.named_children(node)) {
      if (cst_.node(c).kind != "variable_declarator") continue;
      int name_node = cst_.child_by_field(c, "name");
      if (name_node >= 0 && cst_.node(name_node).kind == "identifier") {
        add_entry(std::string(cst_.slice(name_node)), kind, type_text, name_node);
      }
      int value = cst_.child_by_field(c, "value");
      if (value >= 0) walk(value);  // initializers may declare nested types
    }
  }

  bool inside_type_body(int node) const {
    int parent = cst_.node(node).parent;
    if (parent < 0) return false;
    const std::string& pk = cst_.node(parent).kind;
    return pk == "class_body" || pk == "interface_body" ||
           pk == "enum_body_declarations" || pk == "annotation_type_body";
  }

  void walk(int node) {
    const std::string& kind = cst_.node(node).kind;

    if (is_type_declaration_kind(kind)) {
      walk_type_declaration(node);
      return;
    }
    if (kind == "method_declaration") {
      walk_callable(node, SymbolKind::Method);
      return;
    }
    if (kind == "constructor_declaration" ||
        kind == "compact_constructor_declaration") {
      walk_callable(node, SymbolKind::Constructor);
      return;
    }
    if (kind == "formal_parameter") {
      int name_node = cst_.child_by_field(node, "name");
      if (name_node >= 0) {
        add_entry(std::string(cst_.slice(name_node)), SymbolKind::Parameter,
                  field_slice(node, "type"), name_node);
      }
      return;
    }
    if (kind == "spread_parameter") {
      for (int c : cst_.named_children(node)) {
        if (cst_.node(c).kind == "variable_declarator") {
          int name_node = cst_.child_by_field(c, "name");
          if (name_node >= 0) {
            add_entry(std::string(cst_.slice(name_node)), SymbolKind::Parameter,
                      "", name_node);
          }
        }
      }
      return;
    }
    if (kind == "catch_clause") {
      push_scope(ScopeKind::Block, cst_.node(node).span);
      for (int c : cst_.named_children(node)) walk(c);
      pop_scope();
      return;
    }
    if (kind == "catch_formal_parameter") {
      int name_node = cst_.child_by_field(node, "name");
      std::string type_text;
      for (int c : cst_.named_children(node)) {
        if (cst_.node(c).kind == "catch_type") type_text = std::string(cst_.slice(c));
      }
      if (name_node >= 0) {
        add_entry(std::string(cst_.slice(name_node)), SymbolKind::Parameter,
                  type_text, name_node);
      }
      return;
    }
    if (kind == "local_variable_declaration") {
      walk_variable_declaration(node, SymbolKind::Variable);
      return;
    }
    if (kind == "field_declaration" || kind == "constant_declaration") {
      walk_variable_declaration(node, SymbolKind::Field);
      return;
    }
    if (kind == "enum_constant") {
      int name_node = cst_.child_by_field(node, "name");
      if (name_node >= 0) {
        std::string enum_name =
            current_type() >= 0
                ? table_.types_[static_cast<size_t>(current_type())].name
                : "";
        add_entry(std::string(cst_.slice(name_node)), SymbolKind::Field,
                  enum_name, name_node);
      }
      for (int c : cst_.named_children(node)) walk(c);
      return;
    }
    if (kind == "enhanced_for_statement" || kind == "for_statement") {
      push_scope(ScopeKind::Block, cst_.node(node).span);
      if (kind == "enhanced_for_statement") {
        int name_node = cst_.child_by_field(node, "name");
        if (name_node >= 0) {
          add_entry(std::string(cst_.slice(name_node)), SymbolKind::Variable,
                    field_slice(node, "type"), name_node);
        }
      }
      for (size_t i = 0; i < cst_.node(node).children.size(); ++i) {
        int c = cst_.node(node).children[i];
        if (cst_.node(node).fields[i] == "name" ||
            cst_.node(node).fields[i] == "type")
          continue;
        walk(c);
      }
      pop_scope();
      return;
    }
    if (kind == "block" || kind == "constructor_body" || kind == "switch_block") {
      push_scope(ScopeKind::Block, cst_.node(node).span);
      for (int c : cst_.node(node).children) walk(c);
      pop_scope();
      return;
    }
    for (int c : cst_.node(node).children) walk(c);
  }

  const Cst& cst_;
  SymbolTable table_;
  std::vector<int> scope_stack_;
  std::vector<int> type_stack_;
};

namespace {
bool is_value_kind(SymbolKind k) {
  return k == SymbolKind::Variable || k == SymbolKind::Parameter ||
         k == SymbolKind::Field;
}
}  // namespace

std::string_view to_string(ScopeKind kind) {
  switch (kind) {
    case ScopeKind::Global: return "global";
    case ScopeKind::Type: return "type";
    case ScopeKind::Method: return "method";
    case ScopeKind::Block: return "block";
  }
  return "?";
}

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Variable: return "variable";
    case SymbolKind::Field: return "field";
    case SymbolKind::Parameter: return "parameter";
    case SymbolKind::Method: return "method";
    case SymbolKind::Constructor: return "constructor";
    case SymbolKind::Type: return "type";
  }
  return "?";
}

const TypeInfo* SymbolTable::find_type(std::string_view name) const {
  auto it = type_index_.find(base_type_name(name));
  if (it == type_index_.end()) return nullptr;
  return &types_[static_cast<size_t>(it->second)];
}

bool SymbolTable::is_primitive_type(std::string_view type_text) const {
  const TypeInfo* t = find_type(type_text);
  return t != nullptr && t->is_primitive;
}

int SymbolTable::innermost_scope_at(uint32_t pos) const {
  int best = 0;
  uint32_t best_len = scopes_[0].span.length();
  for (const Scope& s : scopes_) {
    if (s.span.contains(pos) && s.span.length() <= best_len) {
      best = s.id;
      best_len = s.span.length();
    }
  }
  return best;
}

std::optional<int> SymbolTable::resolve_symbol(std::string_view name,
                                               int scope_id) const {
  int cur = scope_id;
  while (cur >= 0) {
    auto it = scope_names_.find({cur, std::string(name)});
    if (it != scope_names_.end()) {
      for (int id : it->second) {
        if (is_value_kind(entries_[static_cast<size_t>(id)].kind)) return id;
      }
    }
    cur = scopes_[static_cast<size_t>(cur)].parent;
  }
  return std::nullopt;
}

std::optional<int> SymbolTable::resolve_at(std::string_view name,
                                           uint32_t pos) const {
  int cur = innermost_scope_at(pos);
  while (cur >= 0) {
    const Scope& sc = scopes_[static_cast<size_t>(cur)];
    auto it = scope_names_.find({cur, std::string(name)});
    if (it != scope_names_.end()) {
      bool position_free =
          sc.kind == ScopeKind::Type || sc.kind == ScopeKind::Global;
      std::optional<int> best;
      uint32_t best_start = 0;
      for (int id : it->second) {
        const SymbolEntry& e = entries_[static_cast<size_t>(id)];
        if (!is_value_kind(e.kind)) continue;
        if (!position_free && e.decl_span.start > pos) continue;
        if (!best || e.decl_span.start >= best_start) {
          best = id;
          best_start = e.decl_span.start;
        }
      }
      if (best) return best;
    }
    cur = sc.parent;
  }
  return std::nullopt;
}

std::optional<int> SymbolTable::entry_of_decl_node(int name_node) const {
  auto it = decl_node_entries_.find(name_node);
  if (it == decl_node_entries_.end()) return std::nullopt;
  return it->second;
}

std::string SymbolTable::static_type_of(const Cst& cst, int expr_node) const {
  const CstNode& n = cst.node(expr_node);
  const std::string& kind = n.kind;
  std::string_view text = cst.slice(expr_node);

  if (kind == "identifier") {
    if (auto e = resolve_at(text, n.span.start)) {
      return entries_[static_cast<size_t>(*e)].declared_type;
    }
    return "";
  }
  if (kind == "decimal_integer_literal" || kind == "hex_integer_literal" ||
      kind == "octal_integer_literal" || kind == "binary_integer_literal") {
    if (!text.empty() && (text.back() == 'l' || text.back() == 'L')) return "long";
    return "int";
  }
  if (kind == "decimal_floating_point_literal") {
    if (!text.empty() && (text.back() == 'f' || text.back() == 'F')) return "float";
    return "double";
  }
  if (kind == "string_literal") return "String";
  if (kind == "character_literal") return "char";
  if (kind == "true" || kind == "false") return "boolean";
  if (kind == "object_creation_expression") {
    int type = cst.child_by_field(expr_node, "type");
    return type >= 0 ? std::string(cst.slice(type)) : "";
  }
  if (kind == "cast_expression") {
    int type = cst.child_by_field(expr_node, "type");
    return type >= 0 ? std::string(cst.slice(type)) : "";
  }
  if (kind == "parenthesized_expression") {
    auto inner = cst.named_children(expr_node);
    return inner.empty() ? "" : static_type_of(cst, inner.front());
  }
  if (kind == "this") {
    int decl = cst.enclosing(expr_node, "class_declaration");
    if (decl < 0) decl = cst.enclosing(expr_node, "enum_declaration");
    if (decl < 0) decl = cst.enclosing(expr_node, "record_declaration");
    if (decl < 0) return "";
    int name = cst.child_by_field(decl, "name");
    return name >= 0 ? std::string(cst.slice(name)) : "";
  }
  if (kind == "field_access") {
    int object = cst.child_by_field(expr_node, "object");
    int field = cst.child_by_field(expr_node, "field");
    if (object < 0 || field < 0) return "";
    std::string owner = static_type_of(cst, object);
    if (owner.empty()) return "";
    const TypeInfo* t = find_type(owner);
    if (t == nullptr) return "";
    std::string_view member = cst.slice(field);
    for (int id : t->members) {
      const SymbolEntry& e = entries_[static_cast<size_t>(id)];
      if (e.kind == SymbolKind::Field && e.name == member) return e.declared_type;
    }
    return "";
  }
  if (kind == "method_invocation") {
    if (auto target = resolve_invocation(cst, expr_node)) {
      return entries_[static_cast<size_t>(target->entry)].declared_type;
    }
    return "";
  }
  return "";
}

namespace {

/// Candidate list: own members first, then supertype chain in declaration
/// order, cycles guarded.
void collect_callable_candidates(const SymbolTable& table, const TypeInfo* type,
                                 SymbolKind kind, std::string_view name,
                                 std::vector<int>& out,
                                 std::set<std::string>& visited) {
  if (type == nullptr || type->is_primitive) return;
  if (!visited.insert(type->name).second) return;
  for (int id : type->members) {
    const SymbolEntry& e = table.entry(id);
    if (e.kind != kind) continue;
    if (kind == SymbolKind::Method && e.name != name) continue;
    out.push_back(id);
  }
  for (const std::string& super : type->supertypes) {
    collect_callable_candidates(table, table.find_type(super), kind, name, out,
                                visited);
  }
}

}  // namespace

std::optional<InvocationTarget> SymbolTable::resolve_invocation(
    const Cst& cst, int call_node,
    std::optional<std::string> receiver_type) const {
  const std::string& kind = cst.node(call_node).kind;

  std::vector<int> candidates;
  const TypeInfo* default_ctor_type = nullptr;
  int arguments = cst.child_by_field(call_node, "arguments");

  if (kind == "object_creation_expression" ||
      kind == "explicit_constructor_invocation") {
    std::string type_text;
    if (receiver_type) {
      type_text = *receiver_type;
    } else if (kind == "object_creation_expression") {
      int type = cst.child_by_field(call_node, "type");
      if (type < 0) return std::nullopt;
      type_text = std::string(cst.slice(type));
    } else {
      int ctor = cst.child_by_field(call_node, "constructor");
      bool is_super = ctor >= 0 && cst.node(ctor).kind == "super";
      int decl = cst.enclosing(call_node, "class_declaration");
      if (decl < 0) return std::nullopt;
      int name = cst.child_by_field(decl, "name");
      if (name < 0) return std::nullopt;
      type_text = std::string(cst.slice(name));
      if (is_super) {
        const TypeInfo* own = find_type(type_text);
        if (own == nullptr || own->supertypes.empty()) return std::nullopt;
        type_text = own->supertypes.front();
      }
    }
    const TypeInfo* type = find_type(type_text);
    if (type == nullptr || type->is_primitive) return std::nullopt;
    std::set<std::string> visited;
    collect_callable_candidates(*this, type, SymbolKind::Constructor, "",
                                candidates, visited);
    if (candidates.empty()) {
      // Locally declared type without an explicit constructor: the type
      // itself is the call target.
      if (type->entry >= 0) return InvocationTarget{type->entry, false};
      return std::nullopt;
    }
    default_ctor_type = type;
    (void)default_ctor_type;
  } else if (kind == "method_invocation") {
    int name = cst.child_by_field(call_node, "name");
    if (name < 0) return std::nullopt;
    std::string_view method_name = cst.slice(name);
    int object = cst.child_by_field(call_node, "object");

    std::set<std::string> visited;
    if (receiver_type) {
      collect_callable_candidates(*this, find_type(*receiver_type),
                                  SymbolKind::Method, method_name, candidates,
                                  visited);
    } else if (object >= 0) {
      std::string t = static_type_of(cst, object);
      if (t.empty() && cst.node(object).kind == "identifier") {
        // Unqualified type name: static-style call on a local type.
        t = std::string(cst.slice(object));
      }
      if (t.empty()) return std::nullopt;
      collect_callable_candidates(*this, find_type(t), SymbolKind::Method,
                                  method_name, candidates, visited);
    } else {
      int decl = cst.enclosing(call_node, "class_declaration");
      if (decl < 0) decl = cst.enclosing(call_node, "interface_declaration");
      if (decl < 0) decl = cst.enclosing(call_node, "enum_declaration");
      if (decl >= 0) {
        int type_name = cst.child_by_field(decl, "name");
        if (type_name >= 0) {
          collect_callable_candidates(*this, find_type(cst.slice(type_name)),
                                      SymbolKind::Method, method_name,
                                      candidates, visited);
        }
      } else {
        // Top-level snippet functions live in the global scope.
        for (const SymbolEntry& e : entries_) {
          if (e.kind == SymbolKind::Method && e.owner_type < 0 &&
              e.name == method_name) {
            candidates.push_back(e.id);
          }
        }
      }
    }
  } else {
    return std::nullopt;
  }

  if (candidates.empty()) return std::nullopt;

  // Arity filter.
  int arity = 0;
  std::vector<int> arg_nodes;
  if (arguments >= 0) {
    arg_nodes = cst.named_children(arguments);
    arity = static_cast<int>(arg_nodes.size());
  }
  std::vector<int> arity_matches;
  for (int id : candidates) {
    const SymbolEntry& e = entries_[static_cast<size_t>(id)];
    if (e.signature && e.signature->arity == arity) arity_matches.push_back(id);
  }
  if (arity_matches.empty()) return std::nullopt;
  if (arity_matches.size() == 1) return InvocationTarget{arity_matches[0], false};

  // Type-text filter on statically typed argument positions.
  std::vector<std::string> arg_types(arg_nodes.size());
  for (size_t i = 0; i < arg_nodes.size(); ++i) {
    arg_types[i] = static_type_of(cst, arg_nodes[i]);
  }
  std::vector<int> survivors;
  for (int id : arity_matches) {
    const Signature& sig = *entries_[static_cast<size_t>(id)].signature;
    bool ok = true;
    for (size_t i = 0; i < arg_types.size() && ok; ++i) {
      if (arg_types[i].empty()) continue;  // unknown: unconstrained
      ok = sig.param_types[i] == arg_types[i];
    }
    if (ok) survivors.push_back(id);
  }
  if (survivors.size() == 1) return InvocationTarget{survivors[0], false};
  // Ambiguous or no survivor with partial type knowledge: first declared
  // wins, flagged low-confidence.
  return InvocationTarget{survivors.empty() ? arity_matches[0] : survivors[0],
                          true};
}

SymbolTable build_symbol_table(const Cst& cst) {
  SymbolTableBuilder builder(cst);
  return builder.run();
}

}  // namespace codeview
