#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "codeview/cst.hpp"

namespace codeview {

enum class View { Ast, Cfg, Dfg };

std::string_view to_string(View view);
std::optional<View> view_from_string(std::string_view name);

enum class EdgeKind {
  // AST
  AstChild,
  // CFG
  Next,
  True,
  False,
  LoopBack,
  SwitchCase,
  ConstructorCall,
  ClassReturn,
  MethodCall,
  MethodReturn,
  // DFG
  DataFlow,
  LastDef,
  LastUse,
  Alias,
};

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> edge_kind_from_string(std::string_view name);
View view_of(EdgeKind kind);

/// Shared node shape across all views. A statement keeps the same id in the
/// AST, CFG and DFG of one unit, which is what makes views combinable.
struct GraphNode {
  int id = -1;
  std::string kind;   // grammar kind (AST) or statement category (CFG/DFG)
  std::string label;  // source text slice (headers: up to the condition)
  Span span;
  std::optional<std::string> enclosing_type;
  std::optional<std::string> enclosing_method;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  int src = -1;
  int dst = -1;
  View view = View::Cfg;
  EdgeKind kind = EdgeKind::Next;
  bool low_confidence = false;  // overload tie broken by declaration order

  std::tuple<int, int, int, int> key() const {
    return {src, dst, static_cast<int>(view), static_cast<int>(kind)};
  }
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct GraphMeta {
  std::string language = "java";
  std::optional<std::string> origin;
  uint64_t unit_hash = 0;  // FNV-1a over the original source bytes
  std::map<std::string, std::string> config;  // echo of the view options

  friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

class CodeViewGraph {
 public:
  std::map<int, GraphNode> nodes;
  std::vector<GraphEdge> edges;  // insertion order, (src,dst,view,kind) unique
  std::set<View> views;
  GraphMeta meta;

  bool has_node(int id) const { return nodes.count(id) != 0; }

  void add_node(GraphNode node);

  /// Inserts unless an identical (src,dst,view,kind) edge exists.
  /// Both endpoints must already be present.
  bool add_edge(GraphEdge edge);

  bool has_edge(int src, int dst, EdgeKind kind) const;

  /// Edges of one view, in insertion order.
  std::vector<GraphEdge> edges_of(View view) const;

  friend bool operator==(const CodeViewGraph& a, const CodeViewGraph& b) {
    return a.nodes == b.nodes && a.edges == b.edges && a.views == b.views &&
           a.meta == b.meta;
  }

 private:
  std::set<std::tuple<int, int, int, int>> edge_keys_;
};

/// Merges views of one unit: node union keyed on id, tagged edge union with
/// duplicates removed. Throws MixedUnitError when inputs come from different
/// units (or when same-id nodes disagree on their label).
CodeViewGraph combine_views(const std::vector<CodeViewGraph>& views);

uint64_t fnv1a_hash(std::string_view bytes);

/// Display label for a CST node: the full source slice, shortened to the
/// header region for control statements and declarations ("if (x > 0)",
/// "for (int i = 0; i < n; i++)", "class A", ...).
std::string node_label(const Cst& cst, int id);

/// Enclosing type/method names for a node, the node itself included.
void fill_context(const Cst& cst, int id, GraphNode& node);

/// Builds a GraphNode anchored at a CST node.
GraphNode make_cst_graph_node(const Cst& cst, int id, std::string kind);

}  // namespace codeview
