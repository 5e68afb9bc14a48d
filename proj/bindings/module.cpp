#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "codeview/parser.hpp"
#include "codeview/pipeline.hpp"

namespace py = pybind11;
using namespace codeview;

namespace {

ViewConfig make_config(const std::vector<std::string>& views, bool collapsed,
                       bool minimized, const std::vector<std::string>& blacklist,
                       bool last_def, bool last_use,
                       std::optional<bool> interprocedural, bool method_snippet,
                       const std::string& format) {
  ViewConfig config;
  config.views.clear();
  for (const std::string& name : views) {
    auto view = view_from_string(name);
    if (!view) throw std::invalid_argument("unknown view '" + name + "'");
    config.views.push_back(*view);
  }
  config.ast.collapsed = collapsed;
  config.ast.minimized = minimized || !blacklist.empty();
  config.ast.blacklist = blacklist;
  config.dfg.last_def = last_def;
  config.dfg.last_use = last_use;
  config.interprocedural = interprocedural;
  config.method_snippet = method_snippet;
  if (format == "json") {
    config.format = OutputFormat::Json;
  } else if (format == "dot") {
    config.format = OutputFormat::Dot;
  } else {
    throw std::invalid_argument("unknown format '" + format + "'");
  }
  return config;
}

}  // namespace

PYBIND11_MODULE(_codeview, m) {
  m.doc() = "Combinable AST/CFG/DFG code-view graphs for Java snippets";

  py::register_exception<SyntaxError>(m, "SyntaxError");
  py::register_exception<EmptyInputError>(m, "EmptyInputError");
  py::register_exception<BlacklistCoversRootError>(m, "BlacklistCoversRootError");

  m.def(
      "generate",
      [](const std::string& source, const std::vector<std::string>& views,
         bool collapsed, bool minimized, const std::vector<std::string>& blacklist,
         bool last_def, bool last_use, std::optional<bool> interprocedural,
         bool method_snippet, const std::string& format, bool color,
         std::optional<std::string> origin) {
        SourceUnit unit;
        unit.text = source;
        unit.origin = std::move(origin);
        ViewConfig config =
            make_config(views, collapsed, minimized, blacklist, last_def,
                        last_use, interprocedural, method_snippet, format);
        DotOptions dot;
        dot.color = color;
        return generate_serialized(unit, config, dot);
      },
      py::arg("source"), py::arg("views") = std::vector<std::string>{"ast"},
      py::arg("collapsed") = false, py::arg("minimized") = false,
      py::arg("blacklist") = std::vector<std::string>{},
      py::arg("last_def") = false, py::arg("last_use") = false,
      py::arg("interprocedural") = std::nullopt,
      py::arg("method_snippet") = false, py::arg("format") = "json",
      py::arg("color") = true, py::arg("origin") = std::nullopt,
      "Run the full pipeline and return serialized graph bytes (str).");

  m.def(
      "check_syntax",
      [](const std::string& source,
         bool method_snippet) -> std::optional<std::pair<uint32_t, uint32_t>> {
        SourceUnit unit;
        unit.text = source;
        try {
          normalize_snippet(unit, method_snippet);
          return std::nullopt;
        } catch (const SyntaxError& e) {
          return std::make_pair(e.span().start, e.span().end);
        }
      },
      py::arg("source"), py::arg("method_snippet") = false,
      "None when the snippet parses, else the (start, end) error span.");
}
