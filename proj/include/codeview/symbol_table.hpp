#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeview/cst.hpp"

namespace codeview {

enum class ScopeKind { Global, Type, Method, Block };
enum class SymbolKind { Variable, Field, Parameter, Method, Constructor, Type };

std::string_view to_string(ScopeKind kind);
std::string_view to_string(SymbolKind kind);

struct Scope {
  int id = -1;
  int parent = -1;  // -1 only for the global scope
  ScopeKind kind = ScopeKind::Global;
  Span span;
};

struct Signature {
  std::string name;
  int arity = 0;
  std::vector<std::string> param_types;  // type texts as written

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SymbolEntry {
  int id = -1;
  std::string name;
  SymbolKind kind = SymbolKind::Variable;
  std::string declared_type;  // as written; empty for type entries, return
                              // type for methods, class name for constructors
  int scope = -1;
  Span decl_span;  // span of the declaring identifier
  std::optional<Signature> signature;  // methods/constructors only
  int owner_type = -1;  // index into types() when declared inside a type body
  int decl_node = -1;   // CST node of the declaring identifier
};

struct TypeInfo {
  std::string name;
  std::vector<std::string> supertypes;  // extends/implements texts, as written
  std::vector<int> members;             // entry ids in declaration order
  bool is_primitive = false;
  int entry = -1;      // the type's own entry id (-1 for primitives)
  int decl_node = -1;  // CST node of the type declaration (-1 for primitives)
};

struct InvocationTarget {
  int entry = -1;  // method/constructor entry, or the type entry itself when
                   // a local type has no explicit constructor
  bool low_confidence = false;  // tie broken by declaration order
};

class SymbolTable {
 public:
  const std::vector<Scope>& scopes() const { return scopes_; }
  const std::vector<SymbolEntry>& entries() const { return entries_; }
  const std::vector<TypeInfo>& types() const { return types_; }

  const Scope& scope(int id) const { return scopes_[static_cast<size_t>(id)]; }
  const SymbolEntry& entry(int id) const { return entries_[static_cast<size_t>(id)]; }

  const TypeInfo* find_type(std::string_view name) const;
  bool is_primitive_type(std::string_view type_text) const;
  /// Non-empty, non-primitive type text. Unknown ("") counts as reference,
  /// matching the pass-by-value exclusion: only provably primitive values
  /// are excluded from reference tracking.
  bool is_reference_type(std::string_view type_text) const {
    return !is_primitive_type(type_text);
  }

  int global_scope() const { return 0; }
  int innermost_scope_at(uint32_t pos) const;

  /// Nearest enclosing scope declaring `name` (innermost shadowing wins).
  /// Only value entries (variables, parameters, fields) participate.
  std::optional<int> resolve_symbol(std::string_view name, int scope_id) const;

  /// Position-aware lookup for identifier use sites: block/method entries
  /// must be declared at or before `pos`; type/global members are visible
  /// throughout their scope.
  std::optional<int> resolve_at(std::string_view name, uint32_t pos) const;

  /// Entry declared by the given declaring-identifier node, if any.
  std::optional<int> entry_of_decl_node(int name_node) const;

  /// Signature-based overload resolution at a call site node
  /// (method_invocation, object_creation_expression, or
  /// explicit_constructor_invocation). `receiver_type` overrides the
  /// statically inferred receiver type when provided.
  std::optional<InvocationTarget> resolve_invocation(
      const Cst& cst, int call_node,
      std::optional<std::string> receiver_type = std::nullopt) const;

  /// Static type text of an expression, "" when unknown.
  std::string static_type_of(const Cst& cst, int expr_node) const;

 private:
  friend SymbolTable build_symbol_table(const Cst& cst);
  friend class SymbolTableBuilder;

  std::vector<Scope> scopes_;
  std::vector<SymbolEntry> entries_;
  std::vector<TypeInfo> types_;
  std::map<std::string, int, std::less<>> type_index_;
  std::map<std::pair<int, std::string>, std::vector<int>> scope_names_;
  std::map<int, int> decl_node_entries_;
};

SymbolTable build_symbol_table(const Cst& cst);

}  // namespace codeview
