#pragma once

#include <cctype>
#include <optional>
#include <string>

namespace cvtest {

/// Strict recursive-descent check of DOT digraph syntax for the dialect the
/// serializer emits: `digraph ID { stmt* }` where a stmt is a node statement
/// `ID attrs? ;`, an edge statement `ID -> ID attrs? ;`, or an attr default
/// `node attrs ;`. IDs are alphanumerics or double-quoted strings with
/// backslash escapes. Returns an error message, or nullopt when valid.
class DotChecker {
 public:
  std::optional<std::string> check(const std::string& text) {
    text_ = &text;
    pos_ = 0;
    if (!keyword("digraph")) return err("expected 'digraph'");
    if (!identifier()) return err("expected graph name");
    if (!symbol('{')) return err("expected '{'");
    while (true) {
      skip_ws();
      if (peek() == '}') break;
      if (pos_ >= text.size()) return err("unexpected end of input");
      if (!statement()) return err(last_error_);
    }
    if (!symbol('}')) return err("expected '}'");
    skip_ws();
    if (pos_ != text.size()) return err("trailing bytes after graph");
    return std::nullopt;
  }

 private:
  bool statement() {
    // node-default statement: node [..] ;
    size_t save = pos_;
    if (keyword("node") || keyword("edge") || keyword("graph")) {
      if (!attr_list()) return fail("expected attribute list");
      return terminator();
    }
    pos_ = save;
    if (!identifier()) return fail("expected node id");
    skip_ws();
    if (peek() == '-') {
      if (!symbol('-') || !symbol('>')) return fail("expected '->'");
      if (!identifier()) return fail("expected edge target id");
      skip_ws();
      if (peek() == '[' && !attr_list()) return fail("bad edge attributes");
      return terminator();
    }
    if (peek() == '[' && !attr_list()) return fail("bad node attributes");
    return terminator();
  }

  bool terminator() {
    skip_ws();
    if (peek() == ';') {
      ++pos_;
      return true;
    }
    return fail("expected ';'");
  }

  bool attr_list() {
    if (!symbol('[')) return fail("expected '['");
    while (true) {
      if (!identifier()) return fail("expected attribute name");
      if (!symbol('=')) return fail("expected '='");
      if (!identifier()) return fail("expected attribute value");
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    return symbol(']') || fail("expected ']'");
  }

  bool identifier() {
    skip_ws();
    if (peek() == '"') return quoted();
    size_t start = pos_;
    while (pos_ < text_->size() &&
           (std::isalnum(static_cast<unsigned char>((*text_)[pos_])) ||
            (*text_)[pos_] == '_' || (*text_)[pos_] == '.')) {
      ++pos_;
    }
    return pos_ > start || fail("expected identifier");
  }

  bool quoted() {
    ++pos_;  // opening quote
    while (pos_ < text_->size()) {
      char c = (*text_)[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '"') {
        ++pos_;
        return true;
      }
      if (c == '\n') return fail("raw newline in quoted string");
      ++pos_;
    }
    return fail("unterminated quoted string");
  }

  bool keyword(const char* word) {
    skip_ws();
    size_t len = std::string(word).size();
    if (text_->compare(pos_, len, word) != 0) return false;
    size_t after = pos_ + len;
    if (after < text_->size() &&
        std::isalnum(static_cast<unsigned char>((*text_)[after]))) {
      return false;
    }
    pos_ = after;
    return true;
  }

  bool symbol(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void skip_ws() {
    while (pos_ < text_->size() &&
           std::isspace(static_cast<unsigned char>((*text_)[pos_]))) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_->size() ? (*text_)[pos_] : '\0'; }

  bool fail(const char* message) {
    last_error_ = std::string(message) + " near byte " + std::to_string(pos_);
    return false;
  }
  std::optional<std::string> err(const std::string& message) {
    return message + " near byte " + std::to_string(pos_);
  }

  const std::string* text_ = nullptr;
  size_t pos_ = 0;
  std::string last_error_ = "parse error";
};

inline std::optional<std::string> check_dot(const std::string& text) {
  DotChecker checker;
  return checker.check(text);
}

}  // namespace cvtest
