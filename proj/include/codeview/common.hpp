#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace codeview {

/// Half-open byte range into the source text, 0-based.
struct Span {
  uint32_t start = 0;
  uint32_t end = 0;

  bool contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  bool contains(uint32_t pos) const { return start <= pos && pos < end; }
  uint32_t length() const { return end > start ? end - start : 0; }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

enum class Language { Java };

inline const char* language_name(Language lang) {
  switch (lang) {
    case Language::Java: return "java";
  }
  return "unknown";
}

/// Raised when a snippet still contains grammar error nodes after the
/// normalization retries. Carries the span of the first offending node.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, Span span)
      : std::runtime_error(message + " at bytes [" + std::to_string(span.start) +
                           "," + std::to_string(span.end) + ")"),
        span_(span) {}

  Span span() const { return span_; }

 private:
  Span span_;
};

class EmptyInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by AST minimization when the requested blacklist would delete the
/// root node.
class BlacklistCoversRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when graphs derived from different source units are combined.
class MixedUnitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace codeview
