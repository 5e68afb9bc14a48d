#include "codeview/ast_view.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace codeview {

namespace {

bool is_comment(std::string_view kind) {
  return kind == "line_comment" || kind == "block_comment";
}

void build_ast_rec(const Cst& cst, int id, CodeViewGraph& g) {
  g.add_node(make_cst_graph_node(cst, id, cst.node(id).kind));
  for (int c : cst.node(id).children) {
    const CstNode& child = cst.node(c);
    if (!child.named || is_comment(child.kind)) continue;
    build_ast_rec(cst, c, g);
    g.add_edge({id, c, View::Ast, EdgeKind::AstChild});
  }
}

/// True when this identifier occurrence names a variable/parameter/field
/// use or declaration (as opposed to a method name, type name, label, ...).
bool is_variable_identifier(const Cst& cst, int id) {
  const CstNode& n = cst.node(id);
  if (n.kind != "identifier") return false;
  int parent = n.parent;
  if (parent < 0) return false;
  const CstNode& p = cst.node(parent);

  std::string field;
  for (size_t i = 0; i < p.children.size(); ++i) {
    if (p.children[i] == id) {
      field = p.fields[i];
      break;
    }
  }

  if (p.kind == "labeled_statement" || p.kind == "break_statement" ||
      p.kind == "continue_statement" || p.kind == "method_reference") {
    return false;
  }
  if (field == "name") {
    // Declaring occurrences of variables keep their identity; names of
    // methods, types and invocations are not variables.
    return p.kind == "variable_declarator" || p.kind == "formal_parameter" ||
           p.kind == "catch_formal_parameter" ||
           p.kind == "enhanced_for_statement";
  }
  if (p.kind == "field_access" && field == "field") {
    int object = cst.child_by_field(parent, "object");
    return object >= 0 && cst.node(object).kind == "this";
  }
  if (cst.enclosing(id, "import_declaration") >= 0 ||
      cst.enclosing(id, "package_declaration") >= 0 ||
      cst.enclosing(id, "scoped_identifier") >= 0) {
    return false;
  }
  return true;
}

}  // namespace

CodeViewGraph build_ast(const Cst& cst) {
  CodeViewGraph g;
  g.views.insert(View::Ast);
  g.meta.unit_hash = fnv1a_hash(cst.text());
  build_ast_rec(cst, cst.root(), g);
  return g;
}

CodeViewGraph collapse_ast(const CodeViewGraph& ast, const Cst& cst,
                           const SymbolTable& table) {
  // Group identifier nodes by the symbol entry they resolve to.
  std::map<int, std::vector<int>> groups;  // entry id -> node ids (ascending)
  for (const auto& [id, node] : ast.nodes) {
    if (node.kind != "identifier") continue;
    if (id >= cst.size()) continue;
    if (!is_variable_identifier(cst, id)) continue;
    auto entry = table.resolve_at(node.label, node.span.start);
    if (!entry) continue;
    groups[*entry].push_back(id);
  }

  std::map<int, int> replacement;  // removed node -> representative
  for (const auto& [entry, ids] : groups) {
    if (ids.size() < 2) continue;
    int rep = ids.front();
    for (size_t i = 1; i < ids.size(); ++i) replacement[ids[i]] = rep;
  }

  CodeViewGraph out;
  out.views = ast.views;
  out.meta = ast.meta;
  for (const auto& [id, node] : ast.nodes) {
    if (!replacement.count(id)) out.add_node(node);
  }
  for (GraphEdge e : ast.edges) {
    auto it = replacement.find(e.dst);
    if (it != replacement.end()) e.dst = it->second;
    out.add_edge(e);
  }
  return out;
}

CodeViewGraph minimize_ast(const CodeViewGraph& ast,
                           const std::set<std::string>& blacklist) {
  if (blacklist.empty()) return ast;

  // Children in insertion (source) order; the root has no incoming edge.
  std::map<int, std::vector<int>> children;
  std::set<int> has_parent;
  for (const GraphEdge& e : ast.edges) {
    children[e.src].push_back(e.dst);
    has_parent.insert(e.dst);
  }
  int root = -1;
  for (const auto& [id, node] : ast.nodes) {
    if (!has_parent.count(id)) {
      root = id;
      break;
    }
  }
  if (root < 0 && !ast.nodes.empty()) root = ast.nodes.begin()->first;
  if (root >= 0 && blacklist.count(ast.nodes.at(root).kind)) {
    throw BlacklistCoversRootError("blacklist removes the AST root kind '" +
                                   ast.nodes.at(root).kind + "'");
  }

  CodeViewGraph out;
  out.views = ast.views;
  out.meta = ast.meta;
  for (const auto& [id, node] : ast.nodes) {
    if (!blacklist.count(node.kind)) out.add_node(node);
  }

  // Re-parent: splice removed nodes' children into their place, preserving
  // left-to-right order. Shared (collapsed) leaves may be reached through
  // several parents; edge de-duplication keeps the result consistent.
  auto removed = [&](int id) { return blacklist.count(ast.nodes.at(id).kind) != 0; };
  auto spliced_children = [&](int node) {
    std::vector<int> result;
    auto gather = [&](auto&& self, int n) -> void {
      auto it = children.find(n);
      if (it == children.end()) return;
      for (int c : it->second) {
        if (removed(c)) {
          self(self, c);
        } else {
          result.push_back(c);
        }
      }
    };
    gather(gather, node);
    return result;
  };
  if (root >= 0) {
    auto visit = [&](auto&& self, int node) -> void {
      for (int c : spliced_children(node)) {
        out.add_edge({node, c, View::Ast, EdgeKind::AstChild});
        self(self, c);
      }
    };
    visit(visit, root);
  }
  return out;
}

}  // namespace codeview
