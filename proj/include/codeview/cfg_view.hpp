#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codeview/graph.hpp"
#include "codeview/symbol_table.hpp"

namespace codeview {

enum class CallableKind { Method, Constructor, Initializer, Snippet };

struct CfgCallable {
  CallableKind kind = CallableKind::Method;
  std::string name;            // method name, type name for constructors
  int decl_node = -1;          // CST node of the declaration (-1 for snippets)
  int entry = -1;              // method_entry / constructor_entry node id
  int exit = -1;               // method_exit node id
  std::optional<std::string> enclosing_type;
  std::vector<int> param_name_nodes;  // declaring identifier CST nodes
  std::vector<int> statements;        // statement node ids, creation order
};

struct CfgStatementInfo {
  int cst_node = -1;   // -1 for synthetic entry/exit nodes
  int callable = -1;   // index into Cfg::callables (-1 for type_declaration)
};

struct CallSite {
  int statement = -1;        // calling statement node id
  int call_node = -1;        // CST node of the invocation/creation
  int callee = -1;           // callable index; -1 for implicit default ctor
  int callee_type_decl = -1; // type_declaration node for implicit ctors
  bool is_constructor = false;
  bool assigns_result = false;  // call result feeds an assignment/initializer
  bool low_confidence = false;
};

/// Statement-level control-flow graph of one unit, plus the side tables the
/// data-flow pass needs.
struct Cfg {
  CodeViewGraph graph;
  std::map<int, CfgStatementInfo> info;  // by node id
  std::vector<CfgCallable> callables;
  std::vector<CallSite> calls;  // filled by add_interprocedural_edges
  const Cst* cst = nullptr;
  bool interprocedural = false;

  const CfgCallable* callable_of_decl(int decl_node) const {
    for (const CfgCallable& c : callables) {
      if (c.decl_node == decl_node) return &c;
    }
    return nullptr;
  }
};

/// Per-callable statement graph: sequential "next" edges, "true"/"false"
/// branch edges off condition headers, "loop_back" edges into loop headers,
/// "switch_case" fan-out, and break/continue/return jump edges. Every
/// callable gets one entry and one exit node; unreachable statements stay.
Cfg build_intraprocedural_cfg(const Cst& cst, const SymbolTable& table);

/// Adds "constructor_call"/"class_return" edges for locally resolvable
/// object creations and "method_call"/"method_return" edges for resolvable
/// invocations. Unresolved callees add nothing.
void add_interprocedural_edges(Cfg& cfg, const SymbolTable& table);

/// Expression subtrees evaluated by a statement node itself (conditions for
/// headers, initializers for declarations, ...), excluding nested statements.
std::vector<int> owned_expression_roots(const Cst& cst, int stmt_cst_node);

}  // namespace codeview
