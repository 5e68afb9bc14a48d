#pragma once

#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "codeview/ast_view.hpp"
#include "codeview/cfg_view.hpp"
#include "codeview/dfg_view.hpp"
#include "codeview/parser.hpp"
#include "codeview/pipeline.hpp"
#include "codeview/serialize.hpp"
#include "codeview/symbol_table.hpp"

namespace cvtest {

struct Unit {
  codeview::SourceUnit unit;
  codeview::Cst cst;
  codeview::SymbolTable table;
};

inline std::unique_ptr<Unit> make_unit(std::string text, bool force_wrap = false) {
  auto out = std::make_unique<Unit>();
  codeview::SourceUnit raw;
  raw.text = std::move(text);
  out->unit = codeview::normalize_snippet(raw, force_wrap);
  out->cst = codeview::parse_source(out->unit);
  out->table = codeview::build_symbol_table(out->cst);
  return out;
}

struct CfgBundle {
  std::unique_ptr<Unit> u;
  codeview::Cfg cfg;
};

inline CfgBundle make_cfg(std::string text, bool interprocedural = false,
                          bool force_wrap = false) {
  CfgBundle b;
  b.u = make_unit(std::move(text), force_wrap);
  b.cfg = codeview::build_intraprocedural_cfg(b.u->cst, b.u->table);
  if (interprocedural) codeview::add_interprocedural_edges(b.cfg, b.u->table);
  return b;
}

/// Node id with this exact label; -1 when absent, -2 when ambiguous.
inline int node_by_label(const codeview::CodeViewGraph& g, std::string_view label) {
  int found = -1;
  for (const auto& [id, node] : g.nodes) {
    if (node.label == label) {
      if (found >= 0) return -2;
      found = id;
    }
  }
  return found;
}

using EdgeTriple = std::tuple<std::string, std::string, std::string>;

/// Edges of a view as (src label, dst label, kind) triples.
inline std::multiset<EdgeTriple> edge_triples(const codeview::CodeViewGraph& g,
                                              codeview::View view) {
  std::multiset<EdgeTriple> out;
  for (const codeview::GraphEdge& e : g.edges) {
    if (e.view != view) continue;
    out.insert({g.nodes.at(e.src).label, g.nodes.at(e.dst).label,
                std::string(codeview::to_string(e.kind))});
  }
  return out;
}

inline std::multiset<EdgeTriple> kind_triples(const codeview::CodeViewGraph& g,
                                              codeview::EdgeKind kind) {
  std::multiset<EdgeTriple> out;
  for (const codeview::GraphEdge& e : g.edges) {
    if (e.kind != kind) continue;
    out.insert({g.nodes.at(e.src).label, g.nodes.at(e.dst).label,
                std::string(codeview::to_string(e.kind))});
  }
  return out;
}

}  // namespace cvtest
