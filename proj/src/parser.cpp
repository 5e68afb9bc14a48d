#include "codeview/parser.hpp"

#include <tree_sitter/api.h>

#include <cassert>
#include <cctype>
#include <memory>

extern "C" const TSLanguage* tree_sitter_java(void);

namespace codeview {
namespace {

struct ParserDeleter {
  void operator()(TSParser* p) const { ts_parser_delete(p); }
};
struct TreeDeleter {
  void operator()(TSTree* t) const { ts_tree_delete(t); }
};

using ParserPtr = std::unique_ptr<TSParser, ParserDeleter>;
using TreePtr = std::unique_ptr<TSTree, TreeDeleter>;

const TSLanguage* grammar_for(Language lang) {
  switch (lang) {
    case Language::Java: return tree_sitter_java();
  }
  return nullptr;
}

TreePtr run_parser(Language lang, const std::string& text) {
  ParserPtr parser(ts_parser_new());
  ts_parser_set_language(parser.get(), grammar_for(lang));
  TSTree* tree = ts_parser_parse_string(parser.get(), nullptr, text.data(),
                                        static_cast<uint32_t>(text.size()));
  return TreePtr(tree);
}

/// Recursively copies a TS subtree into the arena, shifting byte offsets by
/// -`offset`. Returns the arena id of the copied node.
int copy_subtree(TSNode ts_node, std::vector<CstNode>& arena, int parent,
                 const char* field, uint32_t offset) {
  int id = static_cast<int>(arena.size());
  arena.emplace_back();
  {
    CstNode& n = arena.back();
    n.kind = ts_node_type(ts_node);
    n.span = Span{ts_node_start_byte(ts_node) - offset,
                  ts_node_end_byte(ts_node) - offset};
    n.parent = parent;
    n.named = ts_node_is_named(ts_node);
    n.missing = ts_node_is_missing(ts_node);
    n.error_node = ts_node_is_error(ts_node);
    n.has_error = ts_node_has_error(ts_node);
  }
  if (parent >= 0) {
    arena[static_cast<size_t>(parent)].children.push_back(id);
    arena[static_cast<size_t>(parent)].fields.emplace_back(field ? field : "");
  }
  uint32_t count = ts_node_child_count(ts_node);
  for (uint32_t i = 0; i < count; ++i) {
    copy_subtree(ts_node_child(ts_node, i), arena, id,
                 ts_node_field_name_for_child(ts_node, i), offset);
  }
  return id;
}

Cst convert_whole_tree(const TSTree* tree, const std::string& text) {
  std::vector<CstNode> arena;
  copy_subtree(ts_tree_root_node(tree), arena, -1, nullptr, 0);
  return Cst(std::move(arena), text);
}

/// Re-roots a wrapped parse at a synthetic "program" node holding the
/// children of `body` that fall inside the original text region.
Cst reroot_at_body(TSNode body, const std::string& original, uint32_t prefix_len) {
  const uint32_t len = static_cast<uint32_t>(original.size());
  std::vector<CstNode> arena;
  arena.emplace_back();
  arena[0].kind = "program";
  arena[0].span = Span{0, len};
  arena[0].named = true;

  uint32_t count = ts_node_child_count(body);
  for (uint32_t i = 0; i < count; ++i) {
    TSNode child = ts_node_child(body, i);
    uint32_t s = ts_node_start_byte(child);
    uint32_t e = ts_node_end_byte(child);
    if (s < prefix_len || e > prefix_len + len) continue;  // wrapper token
    copy_subtree(child, arena, 0, ts_node_field_name_for_child(body, i),
                 prefix_len);
  }
  bool any_error = false;
  for (int c : arena[0].children) {
    any_error = any_error || arena[static_cast<size_t>(c)].has_error;
  }
  arena[0].has_error = any_error;
  return Cst(std::move(arena), original);
}

struct WrapShape {
  std::string prefix;
  std::string suffix;
};

WrapShape wrap_shape(WrapperKind kind) {
  switch (kind) {
    case WrapperKind::TypeShell:
      return {"class __CvSnippetShell__ {\n", "\n}\n"};
    case WrapperKind::TypeAndMethodShell:
      return {"class __CvSnippetShell__ {\nvoid __cvSnippetBody__() {\n",
              "\n}\n}\n"};
    case WrapperKind::None: break;
  }
  return {};
}

/// Parses `unit.text` inside the given wrapper and re-roots the tree at the
/// wrapper body. The resulting spans are relative to the original text.
Cst parse_wrapped(const SourceUnit& unit, WrapperKind kind) {
  WrapShape shape = wrap_shape(kind);
  std::string wrapped = shape.prefix + unit.text + shape.suffix;
  TreePtr tree = run_parser(unit.language, wrapped);
  TSNode root = ts_tree_root_node(tree.get());

  // program -> class_declaration -> class_body [-> method_declaration -> block]
  TSNode body{};
  bool found = false;
  uint32_t top = ts_node_named_child_count(root);
  for (uint32_t i = 0; i < top && !found; ++i) {
    TSNode cls = ts_node_named_child(root, i);
    if (std::string_view(ts_node_type(cls)) != "class_declaration") continue;
    TSNode class_body = ts_node_child_by_field_name(cls, "body", 4);
    if (ts_node_is_null(class_body)) continue;
    if (kind == WrapperKind::TypeShell) {
      body = class_body;
      found = true;
      break;
    }
    uint32_t members = ts_node_named_child_count(class_body);
    for (uint32_t j = 0; j < members; ++j) {
      TSNode method = ts_node_named_child(class_body, j);
      if (std::string_view(ts_node_type(method)) != "method_declaration") continue;
      TSNode block = ts_node_child_by_field_name(method, "body", 4);
      if (!ts_node_is_null(block)) {
        body = block;
        found = true;
        break;
      }
    }
  }
  if (!found) {
    // Wrapper structure itself failed to parse; report against the raw text.
    return parse_lenient(SourceUnit{unit.text, unit.language, unit.origin});
  }
  Cst cst = reroot_at_body(body, unit.text, static_cast<uint32_t>(shape.prefix.size()));
  // The wrapped parse may push errors into the wrapper region (outside the
  // re-rooted tree). Treat the unit as erroneous if the full tree has errors
  // anywhere, so normalization does not accept a broken wrap.
  if (ts_node_has_error(root) && !cst.has_error()) {
    std::vector<CstNode> nodes;
    nodes.emplace_back();
    nodes[0].kind = "program";
    nodes[0].span = Span{0, static_cast<uint32_t>(unit.text.size())};
    nodes[0].named = true;
    nodes[0].has_error = true;
    nodes[0].error_node = true;
    return Cst(std::move(nodes), unit.text);
  }
  return cst;
}

bool blank(const std::string& text) {
  for (unsigned char c : text) {
    if (!std::isspace(c)) return false;
  }
  return true;
}

/// Returns the byte offset of the first invalid UTF-8 sequence, or -1.
long long first_invalid_utf8(const std::string& text) {
  const unsigned char* p = reinterpret_cast<const unsigned char*>(text.data());
  size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    unsigned char c = p[i];
    size_t extra;
    if (c < 0x80) {
      i += 1;
      continue;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return static_cast<long long>(i);
    }
    if (i + extra >= n) return static_cast<long long>(i);
    for (size_t k = 1; k <= extra; ++k) {
      if ((p[i + k] & 0xC0) != 0x80) return static_cast<long long>(i);
    }
    i += extra + 1;
  }
  return -1;
}

void check_input(const SourceUnit& unit) {
  if (blank(unit.text)) throw EmptyInputError("empty source input");
  long long bad = first_invalid_utf8(unit.text);
  if (bad >= 0) {
    uint32_t pos = static_cast<uint32_t>(bad);
    throw SyntaxError("invalid UTF-8 byte sequence", Span{pos, pos + 1});
  }
}

Span first_error_span(const Cst& cst) {
  int bad = cst.first_error_node();
  if (bad < 0) return Span{0, 0};
  return cst.node(bad).span;
}

}  // namespace

Cst parse_lenient(const SourceUnit& unit) {
  TreePtr tree = run_parser(unit.language, unit.text);
  return convert_whole_tree(tree.get(), unit.text);
}

Cst parse_source(const SourceUnit& unit) {
  check_input(unit);
  Cst cst = unit.wrapper == WrapperKind::None ? parse_lenient(unit)
                                              : parse_wrapped(unit, unit.wrapper);
  if (cst.has_error()) {
    throw SyntaxError("syntax error", first_error_span(cst));
  }
  return cst;
}

SourceUnit normalize_snippet(const SourceUnit& unit, bool force_wrap) {
  check_input(unit);
  if (!force_wrap) {
    Cst raw = parse_lenient(unit);
    if (!raw.has_error()) {
      SourceUnit out = unit;
      out.synthetic_wrapper = false;
      out.wrapper = WrapperKind::None;
      return out;
    }
  }
  for (WrapperKind kind : {WrapperKind::TypeShell, WrapperKind::TypeAndMethodShell}) {
    Cst wrapped = parse_wrapped(unit, kind);
    if (!wrapped.has_error()) {
      SourceUnit out = unit;
      out.synthetic_wrapper = true;
      out.wrapper = kind;
      return out;
    }
  }
  Cst raw = parse_lenient(unit);
  throw SyntaxError("syntax error", first_error_span(raw));
}

}  // namespace codeview
