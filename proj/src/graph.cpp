#include "codeview/graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace codeview {

std::string_view to_string(View view) {
  switch (view) {
    case View::Ast: return "AST";
    case View::Cfg: return "CFG";
    case View::Dfg: return "DFG";
  }
  return "?";
}

std::optional<View> view_from_string(std::string_view name) {
  if (name == "AST" || name == "ast") return View::Ast;
  if (name == "CFG" || name == "cfg") return View::Cfg;
  if (name == "DFG" || name == "dfg") return View::Dfg;
  return std::nullopt;
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::AstChild: return "ast_child";
    case EdgeKind::Next: return "next";
    case EdgeKind::True: return "true";
    case EdgeKind::False: return "false";
    case EdgeKind::LoopBack: return "loop_back";
    case EdgeKind::SwitchCase: return "switch_case";
    case EdgeKind::ConstructorCall: return "constructor_call";
    case EdgeKind::ClassReturn: return "class_return";
    case EdgeKind::MethodCall: return "method_call";
    case EdgeKind::MethodReturn: return "method_return";
    case EdgeKind::DataFlow: return "data_flow";
    case EdgeKind::LastDef: return "last_def";
    case EdgeKind::LastUse: return "last_use";
    case EdgeKind::Alias: return "alias";
  }
  return "?";
}

std::optional<EdgeKind> edge_kind_from_string(std::string_view name) {
  static const std::pair<std::string_view, EdgeKind> table[] = {
      {"ast_child", EdgeKind::AstChild},
      {"next", EdgeKind::Next},
      {"true", EdgeKind::True},
      {"false", EdgeKind::False},
      {"loop_back", EdgeKind::LoopBack},
      {"switch_case", EdgeKind::SwitchCase},
      {"constructor_call", EdgeKind::ConstructorCall},
      {"class_return", EdgeKind::ClassReturn},
      {"method_call", EdgeKind::MethodCall},
      {"method_return", EdgeKind::MethodReturn},
      {"data_flow", EdgeKind::DataFlow},
      {"last_def", EdgeKind::LastDef},
      {"last_use", EdgeKind::LastUse},
      {"alias", EdgeKind::Alias},
  };
  for (const auto& [n, k] : table) {
    if (n == name) return k;
  }
  return std::nullopt;
}

View view_of(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::AstChild:
      return View::Ast;
    case EdgeKind::Next:
    case EdgeKind::True:
    case EdgeKind::False:
    case EdgeKind::LoopBack:
    case EdgeKind::SwitchCase:
    case EdgeKind::ConstructorCall:
    case EdgeKind::ClassReturn:
    case EdgeKind::MethodCall:
    case EdgeKind::MethodReturn:
      return View::Cfg;
    case EdgeKind::DataFlow:
    case EdgeKind::LastDef:
    case EdgeKind::LastUse:
    case EdgeKind::Alias:
      return View::Dfg;
  }
  return View::Cfg;
}

void CodeViewGraph::add_node(GraphNode node) {
  assert(node.id >= 0);
  nodes.emplace(node.id, std::move(node));
}

bool CodeViewGraph::add_edge(GraphEdge edge) {
  assert(has_node(edge.src) && has_node(edge.dst));
  if (!edge_keys_.insert(edge.key()).second) return false;
  edges.push_back(edge);
  return true;
}

bool CodeViewGraph::has_edge(int src, int dst, EdgeKind kind) const {
  return edge_keys_.count({src, dst, static_cast<int>(view_of(kind)),
                           static_cast<int>(kind)}) != 0;
}

std::vector<GraphEdge> CodeViewGraph::edges_of(View view) const {
  std::vector<GraphEdge> out;
  for (const GraphEdge& e : edges) {
    if (e.view == view) out.push_back(e);
  }
  return out;
}

CodeViewGraph combine_views(const std::vector<CodeViewGraph>& views) {
  if (views.empty()) {
    throw std::invalid_argument("combine_views: no input graphs");
  }
  const uint64_t hash = views.front().meta.unit_hash;
  for (const CodeViewGraph& g : views) {
    if (g.meta.unit_hash != hash) {
      throw MixedUnitError("cannot combine graphs from different source units");
    }
  }

  CodeViewGraph out;
  out.meta = views.front().meta;
  for (const CodeViewGraph& g : views) {
    out.views.insert(g.views.begin(), g.views.end());
    for (const auto& [k, v] : g.meta.config) out.meta.config.emplace(k, v);
    for (const auto& [id, node] : g.nodes) {
      auto it = out.nodes.find(id);
      if (it == out.nodes.end()) {
        out.nodes.emplace(id, node);
      } else if (it->second.label != node.label) {
        throw MixedUnitError("node " + std::to_string(id) +
                             " has conflicting labels across views");
      }
    }
  }
  for (const CodeViewGraph& g : views) {
    for (const GraphEdge& e : g.edges) out.add_edge(e);
  }
  return out;
}

uint64_t fnv1a_hash(std::string_view bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\n' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_type_decl_kind(std::string_view kind) {
  return kind == "class_declaration" || kind == "interface_declaration" ||
         kind == "enum_declaration" || kind == "record_declaration" ||
         kind == "annotation_type_declaration";
}

}  // namespace

std::string node_label(const Cst& cst, int id) {
  const CstNode& n = cst.node(id);
  const std::string& kind = n.kind;
  auto head_until = [&](uint32_t end) {
    return std::string(rtrim(cst.slice(Span{n.span.start, end})));
  };

  if (kind == "if_statement" || kind == "while_statement" ||
      kind == "switch_expression" || kind == "switch_statement") {
    int cond = cst.child_by_field(id, "condition");
    if (cond >= 0) return head_until(cst.node(cond).span.end);
  }
  if (kind == "do_statement") {
    int cond = cst.child_by_field(id, "condition");
    if (cond >= 0) return "do while " + std::string(cst.slice(cond));
  }
  if (kind == "for_statement" || kind == "enhanced_for_statement") {
    int body = cst.child_by_field(id, "body");
    if (body >= 0) return head_until(cst.node(body).span.start);
  }
  if (is_type_decl_kind(kind)) {
    int name = cst.child_by_field(id, "name");
    if (name >= 0) return head_until(cst.node(name).span.end);
  }
  if (kind == "method_declaration" || kind == "constructor_declaration") {
    int params = cst.child_by_field(id, "parameters");
    if (params >= 0) return head_until(cst.node(params).span.end);
  }
  if (kind == "catch_clause" || kind == "synchronized_statement") {
    int body = cst.child_by_field(id, "body");
    if (body >= 0) return head_until(cst.node(body).span.start);
  }
  return std::string(cst.slice(id));
}

void fill_context(const Cst& cst, int id, GraphNode& node) {
  int cur = id;
  while (cur >= 0) {
    const CstNode& n = cst.node(cur);
    if (!node.enclosing_method &&
        (n.kind == "method_declaration" || n.kind == "constructor_declaration" ||
         n.kind == "compact_constructor_declaration")) {
      int name = cst.child_by_field(cur, "name");
      if (name >= 0) node.enclosing_method = std::string(cst.slice(name));
    }
    if (is_type_decl_kind(n.kind)) {
      int name = cst.child_by_field(cur, "name");
      if (name >= 0) {
        node.enclosing_type = std::string(cst.slice(name));
        break;
      }
    }
    cur = n.parent;
  }
}

GraphNode make_cst_graph_node(const Cst& cst, int id, std::string kind) {
  GraphNode node;
  node.id = id;
  node.kind = std::move(kind);
  node.label = node_label(cst, id);
  node.span = cst.node(id).span;
  fill_context(cst, id, node);
  return node;
}

}  // namespace codeview
