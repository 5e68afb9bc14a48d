#include "codeview/cfg_view.hpp"

#include <algorithm>
#include <cassert>

namespace codeview {

namespace {

bool is_comment(std::string_view kind) {
  return kind == "line_comment" || kind == "block_comment";
}

bool is_type_decl_kind(std::string_view kind) {
  return kind == "class_declaration" || kind == "interface_declaration" ||
         kind == "enum_declaration" || kind == "record_declaration" ||
         kind == "annotation_type_declaration";
}

bool is_callable_decl_kind(std::string_view kind) {
  return kind == "method_declaration" || kind == "constructor_declaration" ||
         kind == "compact_constructor_declaration" ||
         kind == "static_initializer";
}

/// Statement kinds that belong to an implicit top-level snippet body.
bool is_snippet_statement_kind(std::string_view kind) {
  return !is_type_decl_kind(kind) && !is_callable_decl_kind(kind) &&
         kind != "import_declaration" && kind != "package_declaration" &&
         kind != "module_declaration" && !is_comment(kind) &&
         kind != "empty_statement";
}

struct Pending {
  int src = -1;
  EdgeKind kind = EdgeKind::Next;
};
using Frontier = std::vector<Pending>;

struct BreakableCtx {
  std::string label;      // label name, "" if unlabeled
  bool is_loop = false;   // continue targets exist only for loops
  int continue_target = -1;
  Frontier breaks;
};

class CfgBuilder {
 public:
  CfgBuilder(const Cst& cst, const SymbolTable& table) : cst_(cst), table_(table) {
    cfg_.cst = &cst;
    cfg_.graph.views.insert(View::Cfg);
    cfg_.graph.meta.unit_hash = fnv1a_hash(cst.text());
  }

  Cfg run() {
    next_synthetic_id_ = cst_.size();
    add_type_declaration_nodes(cst_.root());
    collect_callables(cst_.root());
    maybe_collect_snippet_callable();
    for (size_t i = 0; i < cfg_.callables.size(); ++i) {
      build_callable(static_cast<int>(i));
    }
    return std::move(cfg_);
  }

 private:
  // ---- node helpers ----------------------------------------------------

  int make_statement(int cst_node, std::string category) {
    int id = cst_node;
    if (!cfg_.graph.has_node(id)) {
      cfg_.graph.add_node(make_cst_graph_node(cst_, id, std::move(category)));
      cfg_.info[id] = CfgStatementInfo{cst_node, current_callable_};
      if (current_callable_ >= 0) {
        cfg_.callables[static_cast<size_t>(current_callable_)].statements.push_back(id);
      }
    }
    return id;
  }

  int make_synthetic(std::string category, std::string label, Span span,
                     std::optional<std::string> type_ctx,
                     std::optional<std::string> method_ctx) {
    GraphNode node;
    node.id = next_synthetic_id_++;
    node.kind = std::move(category);
    node.label = std::move(label);
    node.span = span;
    node.enclosing_type = std::move(type_ctx);
    node.enclosing_method = std::move(method_ctx);
    cfg_.graph.add_node(std::move(node));
    cfg_.info[cfg_.graph.nodes.rbegin()->first] =
        CfgStatementInfo{-1, current_callable_};
    return next_synthetic_id_ - 1;
  }

  void connect(const Frontier& frontier, int target) {
    for (const Pending& p : frontier) {
      cfg_.graph.add_edge({p.src, target, View::Cfg, p.kind});
    }
  }

  /// Closes a loop: plain sequential exits become back edges, dangling
  /// branch edges keep their own kind so headers retain true/false arity.
  void connect_loop_back(const Frontier& frontier, int header) {
    for (Pending p : frontier) {
      if (p.kind == EdgeKind::Next) p.kind = EdgeKind::LoopBack;
      cfg_.graph.add_edge({p.src, header, View::Cfg, p.kind});
    }
  }

  // ---- discovery passes --------------------------------------------------

  void add_type_declaration_nodes(int node) {
    const CstNode& n = cst_.node(node);
    if (is_type_decl_kind(n.kind)) {
      cfg_.graph.add_node(make_cst_graph_node(cst_, node, "type_declaration"));
      cfg_.info[node] = CfgStatementInfo{node, -1};
    }
    for (int c : n.children) add_type_declaration_nodes(c);
  }

  void collect_callables(int node) {
    const CstNode& n = cst_.node(node);
    if (is_callable_decl_kind(n.kind)) {
      int body = cst_.child_by_field(node, "body");
      if (body < 0 && n.kind == "static_initializer") {
        for (int c : cst_.named_children(node)) {
          if (cst_.node(c).kind == "block") body = c;
        }
      }
      if (body >= 0) {
        CfgCallable callable;
        callable.decl_node = node;
        if (n.kind == "method_declaration") {
          callable.kind = CallableKind::Method;
        } else if (n.kind == "static_initializer") {
          callable.kind = CallableKind::Initializer;
        } else {
          callable.kind = CallableKind::Constructor;
        }
        int name = cst_.child_by_field(node, "name");
        callable.name = name >= 0 ? std::string(cst_.slice(name)) : "<clinit>";
        GraphNode ctx;
        fill_context(cst_, node, ctx);
        callable.enclosing_type = ctx.enclosing_type;
        int params = cst_.child_by_field(node, "parameters");
        if (params >= 0) {
          for (int p : cst_.named_children(params)) {
            const std::string& pk = cst_.node(p).kind;
            if (pk == "formal_parameter") {
              int pname = cst_.child_by_field(p, "name");
              if (pname >= 0) callable.param_name_nodes.push_back(pname);
            } else if (pk == "spread_parameter") {
              for (int d : cst_.named_children(p)) {
                if (cst_.node(d).kind == "variable_declarator") {
                  int pname = cst_.child_by_field(d, "name");
                  if (pname >= 0) callable.param_name_nodes.push_back(pname);
                }
              }
            }
          }
        }
        cfg_.callables.push_back(std::move(callable));
      }
    }
    for (int c : n.children) collect_callables(c);
  }

  void maybe_collect_snippet_callable() {
    bool any = false;
    for (int c : cst_.named_children(cst_.root())) {
      if (is_snippet_statement_kind(cst_.node(c).kind)) {
        any = true;
        break;
      }
    }
    if (!any) return;
    CfgCallable callable;
    callable.kind = CallableKind::Snippet;
    callable.name = "<snippet>";
    callable.decl_node = -1;
    cfg_.callables.push_back(std::move(callable));
  }

  // ---- statement construction ---------------------------------------------

  void build_callable(int idx) {
    current_callable_ = idx;
    CfgCallable& callable = cfg_.callables[static_cast<size_t>(idx)];

    Span entry_span{0, 0};
    Span exit_span{0, 0};
    std::vector<int> body_statements;
    if (callable.kind == CallableKind::Snippet) {
      uint32_t len = static_cast<uint32_t>(cst_.text().size());
      entry_span = Span{0, 0};
      exit_span = Span{len, len};
      for (int c : cst_.named_children(cst_.root())) {
        if (is_snippet_statement_kind(cst_.node(c).kind)) {
          body_statements.push_back(c);
        }
      }
    } else {
      int decl = callable.decl_node;
      int name = cst_.child_by_field(decl, "name");
      entry_span = name >= 0 ? cst_.node(name).span
                             : Span{cst_.node(decl).span.start, cst_.node(decl).span.start};
      int body = cst_.child_by_field(decl, "body");
      if (body < 0) {
        for (int c : cst_.named_children(decl)) {
          if (cst_.node(c).kind == "block" || cst_.node(c).kind == "constructor_body") {
            body = c;
          }
        }
      }
      if (body >= 0) {
        exit_span = Span{cst_.node(body).span.end, cst_.node(body).span.end};
        for (int c : cst_.named_children(body)) body_statements.push_back(c);
      }
    }

    std::optional<std::string> method_ctx =
        callable.kind == CallableKind::Snippet
            ? std::nullopt
            : std::optional<std::string>(callable.name);
    const char* entry_kind = callable.kind == CallableKind::Constructor
                                 ? "constructor_entry"
                                 : "method_entry";
    callable.entry = make_synthetic(entry_kind, "entry " + callable.name,
                                    entry_span, callable.enclosing_type, method_ctx);
    callable.exit = make_synthetic("method_exit", "exit " + callable.name,
                                   exit_span, callable.enclosing_type, method_ctx);
    exit_ = callable.exit;

    Frontier frontier{{callable.entry, EdgeKind::Next}};
    frontier = build_statement_list(body_statements, frontier, nullptr);
    connect(frontier, callable.exit);
    current_callable_ = -1;
  }

  Frontier build_statement_list(const std::vector<int>& stmts, Frontier frontier,
                                int* first_out) {
    for (int s : stmts) {
      frontier = build_statement(s, std::move(frontier), first_out);
      first_out = nullptr;
    }
    return frontier;
  }

  Frontier build_block(int block_node, Frontier frontier, int* first_out) {
    std::vector<int> stmts;
    for (int c : cst_.named_children(block_node)) stmts.push_back(c);
    return build_statement_list(stmts, std::move(frontier), first_out);
  }

  void set_first(int* first_out, int id) {
    if (first_out != nullptr && *first_out < 0) *first_out = id;
  }

  Frontier leaf_statement(int node, const char* category, Frontier frontier,
                          int* first_out) {
    int id = make_statement(node, category);
    set_first(first_out, id);
    connect(frontier, id);
    return {{id, EdgeKind::Next}};
  }

  Frontier build_statement(int node, Frontier frontier, int* first_out) {
    const std::string& kind = cst_.node(node).kind;

    if (is_comment(kind) || kind == "empty_statement") return frontier;

    if (kind == "block") {
      return build_block(node, std::move(frontier), first_out);
    }
    if (kind == "local_variable_declaration") {
      return leaf_statement(node, "declaration", std::move(frontier), first_out);
    }
    if (kind == "expression_statement" || kind == "assert_statement" ||
        kind == "explicit_constructor_invocation" || kind == "yield_statement") {
      return leaf_statement(node, "expression_statement", std::move(frontier),
                            first_out);
    }
    if (kind == "return_statement") {
      int id = make_statement(node, "return");
      set_first(first_out, id);
      connect(frontier, id);
      cfg_.graph.add_edge({id, exit_, View::Cfg, EdgeKind::Next});
      return {};
    }
    if (kind == "throw_statement") {
      int id = make_statement(node, "throw");
      set_first(first_out, id);
      connect(frontier, id);
      cfg_.graph.add_edge({id, exit_, View::Cfg, EdgeKind::Next});
      return {};
    }
    if (kind == "break_statement") {
      int id = make_statement(node, "break");
      set_first(first_out, id);
      connect(frontier, id);
      BreakableCtx* ctx = find_breakable(label_of_jump(node), false);
      if (ctx != nullptr) ctx->breaks.push_back({id, EdgeKind::Next});
      return {};
    }
    if (kind == "continue_statement") {
      int id = make_statement(node, "continue");
      set_first(first_out, id);
      connect(frontier, id);
      BreakableCtx* ctx = find_breakable(label_of_jump(node), true);
      if (ctx != nullptr && ctx->continue_target >= 0) {
        cfg_.graph.add_edge({id, ctx->continue_target, View::Cfg, EdgeKind::LoopBack});
      }
      return {};
    }
    if (kind == "if_statement") {
      int header = make_statement(node, "if_header");
      set_first(first_out, header);
      connect(frontier, header);
      int consequence = cst_.child_by_field(node, "consequence");
      int alternative = cst_.child_by_field(node, "alternative");
      Frontier out;
      if (consequence >= 0) {
        Frontier f = build_statement(consequence, {{header, EdgeKind::True}}, nullptr);
        out.insert(out.end(), f.begin(), f.end());
      } else {
        out.push_back({header, EdgeKind::True});
      }
      if (alternative >= 0) {
        Frontier f = build_statement(alternative, {{header, EdgeKind::False}}, nullptr);
        out.insert(out.end(), f.begin(), f.end());
      } else {
        out.push_back({header, EdgeKind::False});
      }
      return out;
    }
    if (kind == "while_statement" || kind == "for_statement" ||
        kind == "enhanced_for_statement") {
      int header = make_statement(node, "loop_header");
      set_first(first_out, header);
      connect(frontier, header);
      push_breakable(true, header);
      int body = cst_.child_by_field(node, "body");
      Frontier body_frontier{{header, EdgeKind::True}};
      if (body >= 0) {
        body_frontier = build_statement(body, std::move(body_frontier), nullptr);
      }
      connect_loop_back(body_frontier, header);
      Frontier out{{header, EdgeKind::False}};
      append_breaks(out);
      return out;
    }
    if (kind == "do_statement") {
      int header = make_statement(node, "loop_header");
      push_breakable(true, header);
      int body = cst_.child_by_field(node, "body");
      Frontier body_frontier = std::move(frontier);
      int body_first = -1;
      body_frontier.push_back({header, EdgeKind::True});
      if (body >= 0) {
        body_frontier = build_statement(body, std::move(body_frontier), &body_first);
      }
      set_first(first_out, body_first >= 0 ? body_first : header);
      connect_loop_back(body_frontier, header);
      Frontier out{{header, EdgeKind::False}};
      append_breaks(out);
      return out;
    }
    if (kind == "switch_expression" || kind == "switch_statement") {
      return build_switch(node, std::move(frontier), first_out);
    }
    if (kind == "try_statement" || kind == "try_with_resources_statement") {
      return build_try(node, std::move(frontier), first_out);
    }
    if (kind == "labeled_statement") {
      std::string label;
      int inner = -1;
      for (int c : cst_.named_children(node)) {
        if (cst_.node(c).kind == "identifier" && label.empty()) {
          label = std::string(cst_.slice(c));
        } else {
          inner = c;
        }
      }
      if (inner < 0) return frontier;
      pending_label_ = label;
      Frontier out = build_statement(inner, std::move(frontier), first_out);
      pending_label_.clear();
      return out;
    }
    if (kind == "synchronized_statement") {
      int header = make_statement(node, "expression_statement");
      set_first(first_out, header);
      connect(frontier, header);
      int body = cst_.child_by_field(node, "body");
      Frontier f{{header, EdgeKind::Next}};
      if (body >= 0) f = build_block(body, std::move(f), nullptr);
      return f;
    }
    if (is_type_decl_kind(kind)) {
      // Local type declaration: the node already exists, control passes by.
      set_first(first_out, node);
      connect(frontier, node);
      return {{node, EdgeKind::Next}};
    }
    if (kind == "field_declaration") {
      return leaf_statement(node, "declaration", std::move(frontier), first_out);
    }
    // Unknown statement-like construct: keep it sequential.
    return leaf_statement(node, "expression_statement", std::move(frontier),
                          first_out);
  }

  Frontier build_switch(int node, Frontier frontier, int* first_out) {
    int header = make_statement(node, "switch_header");
    set_first(first_out, header);
    connect(frontier, header);
    push_breakable(false, -1);

    int body = cst_.child_by_field(node, "body");
    bool saw_default = false;
    Frontier fallthrough;
    Frontier out;
    if (body >= 0) {
      for (int group : cst_.named_children(body)) {
        const std::string& gk = cst_.node(group).kind;
        if (gk == "switch_block_statement_group") {
          std::vector<int> labels;
          std::vector<int> stmts;
          for (int c : cst_.named_children(group)) {
            if (cst_.node(c).kind == "switch_label") {
              labels.push_back(c);
            } else {
              stmts.push_back(c);
            }
          }
          int first_label = -1;
          int prev_label = -1;
          for (int l : labels) {
            int lab = make_statement(l, "case_label");
            cfg_.graph.add_edge({header, lab, View::Cfg, EdgeKind::SwitchCase});
            if (prev_label >= 0) {
              cfg_.graph.add_edge({prev_label, lab, View::Cfg, EdgeKind::Next});
            }
            if (first_label < 0) first_label = lab;
            if (cst_.slice(l).substr(0, 7) == "default") saw_default = true;
            prev_label = lab;
          }
          if (prev_label < 0) continue;
          connect(fallthrough, first_label);  // fall-through enters at the label
          fallthrough = build_statement_list(stmts, {{prev_label, EdgeKind::Next}}, nullptr);
        } else if (gk == "switch_rule") {
          int lab = -1;
          Frontier rule_frontier;
          for (int c : cst_.named_children(group)) {
            if (cst_.node(c).kind == "switch_label") {
              lab = make_statement(c, "case_label");
              cfg_.graph.add_edge({header, lab, View::Cfg, EdgeKind::SwitchCase});
              if (cst_.slice(c).substr(0, 7) == "default") saw_default = true;
              rule_frontier = {{lab, EdgeKind::Next}};
            } else if (lab >= 0) {
              if (cst_.node(c).kind == "block" ||
                  cst_.node(c).kind == "throw_statement" ||
                  cst_.node(c).kind == "expression_statement") {
                rule_frontier = build_statement(c, std::move(rule_frontier), nullptr);
              } else {
                // Expression arm: treat the arm body as one statement node.
                int arm = make_statement(c, "expression_statement");
                connect(rule_frontier, arm);
                rule_frontier = {{arm, EdgeKind::Next}};
              }
            }
          }
          out.insert(out.end(), rule_frontier.begin(), rule_frontier.end());
        }
      }
    }
    out.insert(out.end(), fallthrough.begin(), fallthrough.end());
    if (!saw_default) out.push_back({header, EdgeKind::Next});
    append_breaks(out);
    return out;
  }

  Frontier build_try(int node, Frontier frontier, int* first_out) {
    int resources = cst_.child_by_field(node, "resources");
    if (resources >= 0) {
      for (int r : cst_.named_children(resources)) {
        if (cst_.node(r).kind != "resource") continue;
        frontier = leaf_statement(r, "declaration", std::move(frontier), first_out);
        first_out = nullptr;
      }
    }
    int body = cst_.child_by_field(node, "body");
    int try_first = -1;
    Frontier f = std::move(frontier);
    if (body >= 0) f = build_block(body, std::move(f), &try_first);
    set_first(first_out, try_first);

    for (int c : cst_.named_children(node)) {
      if (cst_.node(c).kind != "catch_clause") continue;
      int catch_header = make_statement(c, "catch_header");
      connect(f, catch_header);
      int catch_body = cst_.child_by_field(c, "body");
      f = Frontier{{catch_header, EdgeKind::Next}};
      if (catch_body >= 0) f = build_block(catch_body, std::move(f), nullptr);
    }

    for (int c : cst_.named_children(node)) {
      if (cst_.node(c).kind != "finally_clause") continue;
      int fin_block = -1;
      for (int b : cst_.named_children(c)) {
        if (cst_.node(b).kind == "block") fin_block = b;
      }
      if (fin_block < 0) continue;
      int fin_first = -1;
      f = build_block(fin_block, std::move(f), &fin_first);
      if (try_first >= 0 && fin_first >= 0) {
        // Single modeled exceptional path: the start of the protected
        // region can transfer straight to the finally block.
        cfg_.graph.add_edge({try_first, fin_first, View::Cfg, EdgeKind::Next});
      }
    }
    return f;
  }

  // ---- breakable context stack -------------------------------------------

  void push_breakable(bool is_loop, int continue_target) {
    BreakableCtx ctx;
    ctx.label = pending_label_;
    pending_label_.clear();
    ctx.is_loop = is_loop;
    ctx.continue_target = continue_target;
    breakables_.push_back(std::move(ctx));
  }

  void append_breaks(Frontier& out) {
    BreakableCtx ctx = std::move(breakables_.back());
    breakables_.pop_back();
    out.insert(out.end(), ctx.breaks.begin(), ctx.breaks.end());
  }

  std::string label_of_jump(int node) const {
    for (int c : cst_.named_children(node)) {
      if (cst_.node(c).kind == "identifier") return std::string(cst_.slice(c));
    }
    return "";
  }

  BreakableCtx* find_breakable(const std::string& label, bool needs_loop) {
    if (!label.empty()) {
      for (auto it = breakables_.rbegin(); it != breakables_.rend(); ++it) {
        if (it->label == label && (!needs_loop || it->is_loop)) return &*it;
      }
    }
    for (auto it = breakables_.rbegin(); it != breakables_.rend(); ++it) {
      if (!needs_loop || it->is_loop) return &*it;
    }
    return nullptr;
  }

  const Cst& cst_;
  const SymbolTable& table_;
  Cfg cfg_;
  int next_synthetic_id_ = 0;
  int current_callable_ = -1;
  int exit_ = -1;
  std::string pending_label_;
  std::vector<BreakableCtx> breakables_;
};

}  // namespace

std::vector<int> owned_expression_roots(const Cst& cst, int stmt_cst_node) {
  if (stmt_cst_node < 0) return {};
  const CstNode& n = cst.node(stmt_cst_node);
  const std::string& kind = n.kind;
  std::vector<int> roots;

  if (kind == "local_variable_declaration" || kind == "field_declaration" ||
      kind == "resource") {
    for (int c : cst.named_children(stmt_cst_node)) {
      if (cst.node(c).kind != "variable_declarator") continue;
      int value = cst.child_by_field(c, "value");
      if (value >= 0) roots.push_back(value);
    }
    if (kind == "resource") {
      int value = cst.child_by_field(stmt_cst_node, "value");
      if (value >= 0) roots.push_back(value);
    }
    return roots;
  }
  if (kind == "expression_statement" || kind == "return_statement" ||
      kind == "throw_statement" || kind == "yield_statement" ||
      kind == "assert_statement") {
    for (int c : cst.named_children(stmt_cst_node)) roots.push_back(c);
    return roots;
  }
  if (kind == "explicit_constructor_invocation") {
    int args = cst.child_by_field(stmt_cst_node, "arguments");
    if (args >= 0) roots.push_back(args);
    return roots;
  }
  if (kind == "if_statement" || kind == "while_statement" ||
      kind == "do_statement" || kind == "switch_expression" ||
      kind == "switch_statement" || kind == "synchronized_statement") {
    int cond = cst.child_by_field(stmt_cst_node, "condition");
    if (cond < 0) {
      // synchronized uses an unnamed parenthesized expression child
      for (int c : cst.named_children(stmt_cst_node)) {
        if (cst.node(c).kind == "parenthesized_expression") {
          cond = c;
          break;
        }
      }
    }
    if (cond >= 0) roots.push_back(cond);
    return roots;
  }
  if (kind == "for_statement") {
    for (std::string_view field : {"init", "condition", "update"}) {
      const CstNode& node = cst.node(stmt_cst_node);
      for (size_t i = 0; i < node.children.size(); ++i) {
        if (node.fields[i] == field) roots.push_back(node.children[i]);
      }
    }
    return roots;
  }
  if (kind == "enhanced_for_statement") {
    int value = cst.child_by_field(stmt_cst_node, "value");
    if (value >= 0) roots.push_back(value);
    return roots;
  }
  if (kind == "switch_label") {
    for (int c : cst.named_children(stmt_cst_node)) roots.push_back(c);
    return roots;
  }
  return roots;
}

Cfg build_intraprocedural_cfg(const Cst& cst, const SymbolTable& table) {
  CfgBuilder builder(cst, table);
  return builder.run();
}

namespace {

void collect_call_nodes(const Cst& cst, int node, std::vector<int>& out) {
  for (int c : cst.node(node).children) collect_call_nodes(cst, c, out);
  const std::string& kind = cst.node(node).kind;
  if (kind == "method_invocation" || kind == "object_creation_expression") {
    out.push_back(node);
  }
}

bool call_result_assigned(const Cst& cst, int call_node, int stmt_cst_node) {
  int cur = call_node;
  while (cur >= 0 && cur != stmt_cst_node) {
    int parent = cst.node(cur).parent;
    if (parent < 0) break;
    const std::string& pk = cst.node(parent).kind;
    if (pk == "variable_declarator" &&
        cst.child_by_field(parent, "value") == cur) {
      return true;
    }
    if (pk == "assignment_expression" &&
        cst.child_by_field(parent, "right") == cur) {
      return true;
    }
    cur = parent;
  }
  return false;
}

}  // namespace

void add_interprocedural_edges(Cfg& cfg, const SymbolTable& table) {
  assert(cfg.cst != nullptr);
  const Cst& cst = *cfg.cst;
  cfg.interprocedural = true;

  for (const auto& [stmt_id, info] : cfg.info) {
    if (info.cst_node < 0) continue;
    const std::string& stmt_kind = cst.node(info.cst_node).kind;

    // Call sites in argument-evaluation order: inner calls complete before
    // the enclosing call, arguments left to right => postorder position.
    std::vector<int> ordered;
    for (int root : owned_expression_roots(cst, info.cst_node)) {
      collect_call_nodes(cst, root, ordered);
    }
    if (stmt_kind == "explicit_constructor_invocation") {
      ordered.push_back(info.cst_node);
    }

    for (int call : ordered) {
      auto target = table.resolve_invocation(cst, call);
      if (!target) continue;
      const SymbolEntry& entry = table.entry(target->entry);

      if (entry.kind == SymbolKind::Type) {
        // Locally declared type without an explicit constructor.
        const TypeInfo* ti = table.find_type(entry.name);
        if (ti == nullptr || ti->decl_node < 0) continue;
        if (!cfg.graph.has_node(ti->decl_node)) continue;
        GraphEdge e{stmt_id, ti->decl_node, View::Cfg, EdgeKind::ConstructorCall,
                    target->low_confidence};
        cfg.graph.add_edge(e);
        cfg.calls.push_back(CallSite{stmt_id, call, -1, ti->decl_node, true,
                                     call_result_assigned(cst, call, info.cst_node),
                                     target->low_confidence});
        continue;
      }
      if (entry.kind != SymbolKind::Method &&
          entry.kind != SymbolKind::Constructor) {
        continue;
      }
      int decl = entry.decl_node >= 0 ? cst.node(entry.decl_node).parent : -1;
      const CfgCallable* callee = decl >= 0 ? cfg.callable_of_decl(decl) : nullptr;
      if (callee == nullptr) continue;  // no body: nothing to flow through
      int callee_idx = static_cast<int>(callee - cfg.callables.data());

      bool is_ctor = entry.kind == SymbolKind::Constructor;
      EdgeKind call_kind = is_ctor ? EdgeKind::ConstructorCall : EdgeKind::MethodCall;
      cfg.graph.add_edge({stmt_id, callee->entry, View::Cfg, call_kind,
                          target->low_confidence});

      if (is_ctor) {
        // Return edge leaves from the final statement when unique,
        // otherwise from the synthetic exit node.
        std::vector<int> exit_preds;
        for (const GraphEdge& e : cfg.graph.edges) {
          if (e.dst == callee->exit && e.view == View::Cfg &&
              e.src != callee->entry) {
            exit_preds.push_back(e.src);
          }
        }
        int ret_src = exit_preds.size() == 1 ? exit_preds.front() : callee->exit;
        cfg.graph.add_edge({ret_src, stmt_id, View::Cfg, EdgeKind::ClassReturn});
      } else {
        cfg.graph.add_edge({callee->exit, stmt_id, View::Cfg, EdgeKind::MethodReturn});
      }
      cfg.calls.push_back(CallSite{stmt_id, call, callee_idx, -1, is_ctor,
                                   call_result_assigned(cst, call, info.cst_node),
                                   target->low_confidence});
    }
  }
}

}  // namespace codeview
