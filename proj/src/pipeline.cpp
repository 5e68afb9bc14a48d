#include "codeview/pipeline.hpp"

#include <algorithm>
#include <set>

#include "codeview/parser.hpp"
#include "codeview/symbol_table.hpp"

namespace codeview {

namespace {

std::string join_views(const std::set<View>& views) {
  std::string out;
  for (View v : views) {
    if (!out.empty()) out += ",";
    std::string name(to_string(v));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out += name;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) {
    if (!out.empty()) out += ",";
    out += s;
  }
  return out;
}

}  // namespace

CodeViewGraph generate_views(const SourceUnit& unit, const ViewConfig& config) {
  std::set<View> requested(config.views.begin(), config.views.end());
  if (requested.empty()) {
    throw std::invalid_argument("no views requested");
  }

  SourceUnit normalized = normalize_snippet(unit, config.method_snippet);
  Cst cst = parse_source(normalized);
  SymbolTable table = build_symbol_table(cst);

  bool need_cfg = requested.count(View::Cfg) || requested.count(View::Dfg);
  std::optional<Cfg> cfg;
  if (need_cfg) {
    cfg = build_intraprocedural_cfg(cst, table);
    bool interprocedural =
        config.interprocedural.value_or(cfg->callables.size() > 1);
    if (interprocedural) add_interprocedural_edges(*cfg, table);
  }

  std::vector<CodeViewGraph> parts;
  if (requested.count(View::Ast)) {
    CodeViewGraph ast = build_ast(cst);
    if (config.ast.minimized || !config.ast.blacklist.empty()) {
      std::set<std::string> blacklist(config.ast.blacklist.begin(),
                                      config.ast.blacklist.end());
      ast = minimize_ast(ast, blacklist);
    }
    if (config.ast.collapsed) ast = collapse_ast(ast, cst, table);
    parts.push_back(std::move(ast));
  }
  if (requested.count(View::Cfg)) {
    parts.push_back(cfg->graph);
  }
  if (requested.count(View::Dfg)) {
    DfgResult dfg = build_dfg(*cfg, table, config.dfg);
    parts.push_back(std::move(dfg.graph));
  }

  CodeViewGraph combined = combine_views(parts);
  combined.meta.language = language_name(config.language);
  combined.meta.origin = normalized.origin;
  combined.meta.config.clear();
  combined.meta.config["views"] = join_views(requested);
  combined.meta.config["collapsed"] = config.ast.collapsed ? "true" : "false";
  combined.meta.config["minimized"] =
      (config.ast.minimized || !config.ast.blacklist.empty()) ? "true" : "false";
  combined.meta.config["blacklist"] = join_list(config.ast.blacklist);
  combined.meta.config["last_def"] = config.dfg.last_def ? "true" : "false";
  combined.meta.config["last_use"] = config.dfg.last_use ? "true" : "false";
  combined.meta.config["interprocedural"] =
      config.interprocedural ? (*config.interprocedural ? "true" : "false")
                             : "auto";
  combined.meta.config["wrapped"] = normalized.synthetic_wrapper ? "true" : "false";
  return combined;
}

std::string generate_serialized(const SourceUnit& unit, const ViewConfig& config,
                                const DotOptions& dot_options) {
  CodeViewGraph graph = generate_views(unit, config);
  if (config.format == OutputFormat::Dot) return to_dot(graph, dot_options);
  return to_json(graph);
}

}  // namespace codeview
