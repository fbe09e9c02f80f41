#pragma once

#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::regex {

/// Single-element class simplification: `[x]` becomes `x`, `[\d]` becomes
/// `\d`, and `[^\d]` becomes `\D` (same for the other shorthand pairs).
/// Adjacent literals created this way are merged. Idempotent.
RegexAst normalize(const RegexAst& ast);

}  // namespace rx2dpl::regex
