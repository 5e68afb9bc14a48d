#pragma once

#include <set>
#include <string>

#include "codeview/graph.hpp"
#include "codeview/symbol_table.hpp"

namespace codeview {

/// Filtered syntax tree: grammar-named nodes only (punctuation, keyword
/// tokens and comments dropped), connected by "ast_child" edges in source
/// order. Node ids are the CST arena ids.
CodeViewGraph build_ast(const Cst& cst);

/// Replaces all identifier occurrences that resolve to one variable,
/// parameter or field entry by a single shared node. The result is a DAG.
/// Unresolved identifiers, type names and method names are left alone.
CodeViewGraph collapse_ast(const CodeViewGraph& ast, const Cst& cst,
                           const SymbolTable& table);

/// Removes every node whose kind is blacklisted and re-parents its children
/// to the nearest surviving ancestor, keeping left-to-right order. Throws
/// BlacklistCoversRootError when the root kind is blacklisted.
CodeViewGraph minimize_ast(const CodeViewGraph& ast,
                           const std::set<std::string>& blacklist);

}  // namespace codeview
