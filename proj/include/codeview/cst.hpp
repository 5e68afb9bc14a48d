#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codeview/common.hpp"

namespace codeview {

/// How a snippet had to be wrapped to become parseable. Spans of wrapper
/// nodes never appear in the tree; everything stays relative to the
/// original text.
enum class WrapperKind {
  None,          // parsed as-is
  TypeShell,     // wrapped in a synthetic type declaration
  TypeAndMethodShell,  // wrapped in a synthetic type + method declaration
};

struct SourceUnit {
  std::string text;  // original snippet bytes (UTF-8)
  Language language = Language::Java;
  std::optional<std::string> origin;  // file path, if any
  bool synthetic_wrapper = false;
  WrapperKind wrapper = WrapperKind::None;
};

/// One concrete-syntax-tree node. Nodes live in a flat preorder arena
/// (see Cst); children/parent are arena indices, which double as the
/// stable node identifiers used by every graph view.
struct CstNode {
  std::string kind;
  Span span;
  int parent = -1;
  bool named = false;
  bool missing = false;     // zero-width node inserted by error recovery
  bool error_node = false;  // grammar ERROR node
  bool has_error = false;   // this node or any descendant is an error
  std::vector<int> children;          // arena indices, ascending byte start
  std::vector<std::string> fields;    // grammar field name per child ("" if none)
};

class Cst {
 public:
  Cst() = default;
  Cst(std::vector<CstNode> nodes, std::string text)
      : nodes_(std::move(nodes)), text_(std::move(text)) {}

  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }

  const CstNode& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
  const std::string& text() const { return text_; }

  std::string_view slice(Span span) const {
    return std::string_view(text_).substr(span.start, span.length());
  }
  std::string_view slice(int id) const { return slice(node(id).span); }

  bool has_error() const { return !nodes_.empty() && nodes_[0].has_error; }

  /// First ERROR or missing node in preorder; -1 when the tree is clean.
  int first_error_node() const {
    for (int i = 0; i < size(); ++i) {
      if (nodes_[static_cast<size_t>(i)].error_node ||
          nodes_[static_cast<size_t>(i)].missing) {
        return i;
      }
    }
    return -1;
  }

  int child_by_field(int id, std::string_view field) const {
    const CstNode& n = node(id);
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (n.fields[i] == field) return n.children[i];
    }
    return -1;
  }

  std::vector<int> named_children(int id) const {
    std::vector<int> out;
    for (int c : node(id).children) {
      if (node(c).named) out.push_back(c);
    }
    return out;
  }

  /// Nearest ancestor (inclusive when `inclusive`) whose kind matches.
  int enclosing(int id, std::string_view kind, bool inclusive = false) const {
    int cur = inclusive ? id : node(id).parent;
    while (cur >= 0) {
      if (node(cur).kind == kind) return cur;
      cur = node(cur).parent;
    }
    return -1;
  }

 private:
  std::vector<CstNode> nodes_;
  std::string text_;
};

}  // namespace codeview
