#include "codeview/serialize.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace codeview {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<GraphEdge> canonical_edges(const CodeViewGraph& graph) {
  std::vector<GraphEdge> edges = graph.edges;
  std::sort(edges.begin(), edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) { return a.key() < b.key(); });
  return edges;
}

std::string hash_hex(uint64_t hash) {
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

}  // namespace

std::string to_json(const CodeViewGraph& graph) {
  ordered_json j;

  ordered_json meta;
  meta["language"] = graph.meta.language;
  meta["origin"] = graph.meta.origin ? ordered_json(*graph.meta.origin)
                                     : ordered_json(nullptr);
  meta["unit"] = hash_hex(graph.meta.unit_hash);
  ordered_json views = ordered_json::array();
  for (View v : graph.views) views.push_back(std::string(to_string(v)));
  meta["views"] = std::move(views);
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : graph.meta.config) config[k] = v;
  meta["config"] = std::move(config);
  j["meta"] = std::move(meta);

  ordered_json nodes = ordered_json::array();
  for (const auto& [id, node] : graph.nodes) {
    ordered_json n;
    n["id"] = id;
    n["kind"] = node.kind;
    n["label"] = node.label;
    n["span"] = ordered_json::array({node.span.start, node.span.end});
    if (node.enclosing_type || node.enclosing_method) {
      ordered_json ctx;
      ctx["type"] = node.enclosing_type ? ordered_json(*node.enclosing_type)
                                        : ordered_json(nullptr);
      ctx["method"] = node.enclosing_method ? ordered_json(*node.enclosing_method)
                                            : ordered_json(nullptr);
      n["context"] = std::move(ctx);
    } else {
      n["context"] = nullptr;
    }
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);

  ordered_json edges = ordered_json::array();
  for (const GraphEdge& e : canonical_edges(graph)) {
    ordered_json edge;
    edge["src"] = e.src;
    edge["dst"] = e.dst;
    edge["view"] = std::string(to_string(e.view));
    edge["kind"] = std::string(to_string(e.kind));
    edges.push_back(std::move(edge));
  }
  j["edges"] = std::move(edges);

  return j.dump(2) + "\n";
}

CodeViewGraph graph_from_json(const std::string& bytes) {
  ordered_json j = ordered_json::parse(bytes);
  CodeViewGraph graph;

  const ordered_json& meta = j.at("meta");
  graph.meta.language = meta.at("language").get<std::string>();
  if (!meta.at("origin").is_null()) {
    graph.meta.origin = meta.at("origin").get<std::string>();
  }
  graph.meta.unit_hash =
      std::stoull(meta.at("unit").get<std::string>(), nullptr, 16);
  for (const auto& v : meta.at("views")) {
    if (auto view = view_from_string(v.get<std::string>())) {
      graph.views.insert(*view);
    }
  }
  for (auto it = meta.at("config").begin(); it != meta.at("config").end(); ++it) {
    graph.meta.config[it.key()] = it.value().get<std::string>();
  }

  for (const auto& n : j.at("nodes")) {
    GraphNode node;
    node.id = n.at("id").get<int>();
    node.kind = n.at("kind").get<std::string>();
    node.label = n.at("label").get<std::string>();
    node.span = Span{n.at("span").at(0).get<uint32_t>(),
                     n.at("span").at(1).get<uint32_t>()};
    if (!n.at("context").is_null()) {
      const auto& ctx = n.at("context");
      if (!ctx.at("type").is_null()) {
        node.enclosing_type = ctx.at("type").get<std::string>();
      }
      if (!ctx.at("method").is_null()) {
        node.enclosing_method = ctx.at("method").get<std::string>();
      }
    }
    graph.add_node(std::move(node));
  }

  for (const auto& e : j.at("edges")) {
    GraphEdge edge;
    edge.src = e.at("src").get<int>();
    edge.dst = e.at("dst").get<int>();
    auto view = view_from_string(e.at("view").get<std::string>());
    auto kind = edge_kind_from_string(e.at("kind").get<std::string>());
    if (!view || !kind) continue;
    edge.view = *view;
    edge.kind = *kind;
    graph.add_edge(edge);
  }
  return graph;
}

namespace {

std::string dot_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

const char* view_color(View view) {
  switch (view) {
    case View::Ast: return "gray";
    case View::Cfg: return "red";
    case View::Dfg: return "blue";
  }
  return "black";
}

}  // namespace

std::string to_dot(const CodeViewGraph& graph, const DotOptions& options) {
  std::string out;
  out += "digraph codeview {\n";
  out += "  node [shape=box];\n";
  for (const auto& [id, node] : graph.nodes) {
    out += "  " + std::to_string(id) + " [label=\"" + dot_escape(node.label) +
           "\"];\n";
  }
  for (const GraphEdge& e : canonical_edges(graph)) {
    out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
           " [label=\"" + std::string(to_string(e.kind)) + "\"";
    if (options.color) {
      out += ", color=\"";
      out += view_color(e.view);
      out += "\"";
    }
    out += "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace codeview
