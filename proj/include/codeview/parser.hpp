#pragma once

#include "codeview/cst.hpp"

namespace codeview {

/// Parses the unit (applying its wrapper, if any) into a CST whose spans are
/// relative to the original text. Throws EmptyInputError for blank input and
/// SyntaxError when the tree contains error or missing nodes.
Cst parse_source(const SourceUnit& unit);

/// Retry-on-error snippet normalization: returns the unit unchanged when it
/// parses cleanly as-is, otherwise marks it for the lightest synthetic
/// wrapper that makes it parse. `force_wrap` skips the as-is attempt and goes
/// straight to the wrapped forms (used for explicit method-level input).
/// Throws SyntaxError when no form parses cleanly.
SourceUnit normalize_snippet(const SourceUnit& unit, bool force_wrap = false);

/// Lenient parse used by normalization and diagnostics: never throws on
/// grammar errors, the returned tree carries error/missing flags instead.
/// Only valid for WrapperKind::None units.
Cst parse_lenient(const SourceUnit& unit);

}  // namespace codeview
