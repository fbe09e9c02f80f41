#pragma once

#include <string>

#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::regex {

/// Parses the supported PCRE subset. Throws SyntaxError (or its subclass
/// UnsupportedFeature) carrying the byte offset of the offending construct.
RegexAst parse_regex(const std::string& source);

/// Maximum accepted bound in `{n,m}`.
inline constexpr std::size_t kMaxQuantifierBound = 65535;

}  // namespace rx2dpl::regex
