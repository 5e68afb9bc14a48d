#pragma once

#include <string>

#include "codeview/graph.hpp"

namespace codeview {

/// Canonical JSON bytes: {"meta","nodes","edges"} with nodes sorted by id,
/// edges sorted by (src, dst, view, kind), stable key order. Byte-identical
/// across runs for identical graphs.
std::string to_json(const CodeViewGraph& graph);

/// Inverse of to_json. Edge order in the result is the canonical order.
CodeViewGraph graph_from_json(const std::string& bytes);

struct DotOptions {
  bool color = true;  // edge color per view: CFG red, DFG blue, AST gray
};

/// Valid DOT digraph with numeric node ids, escaped labels, edge kind as the
/// edge label and the view as a color class. Same ordering as to_json.
std::string to_dot(const CodeViewGraph& graph, const DotOptions& options = {});

}  // namespace codeview
