#pragma once

#include <optional>
#include <string>
#include <vector>

#include "codeview/ast_view.hpp"
#include "codeview/cfg_view.hpp"
#include "codeview/dfg_view.hpp"
#include "codeview/graph.hpp"
#include "codeview/serialize.hpp"

namespace codeview {

enum class OutputFormat { Json, Dot };

struct AstOptions {
  bool collapsed = false;
  bool minimized = false;
  std::vector<std::string> blacklist;  // implies minimized when non-empty
};

struct ViewConfig {
  Language language = Language::Java;
  std::vector<View> views = {View::Ast};  // non-empty; AST < CFG < DFG order
  AstOptions ast;
  DfgOptions dfg;
  std::optional<bool> interprocedural;  // unset: on iff more than one callable
  bool method_snippet = false;          // force the snippet wrapping path
  OutputFormat format = OutputFormat::Json;
};

/// Full pipeline: normalize -> parse -> symbol table -> selected views ->
/// combine. Requesting the DFG computes the CFG internally even when it is
/// not part of the output. Throws SyntaxError / EmptyInputError on bad input.
CodeViewGraph generate_views(const SourceUnit& unit, const ViewConfig& config);

/// generate_views followed by serialization in the configured format.
std::string generate_serialized(const SourceUnit& unit, const ViewConfig& config,
                                const DotOptions& dot_options = {});

}  // namespace codeview
