#pragma once

#include <string>
#include <vector>

#include "rx2dpl/dpl/pattern.hpp"

namespace rx2dpl::dpl {

/// Parses pattern text. Accepts both quote styles, extra whitespace and the
/// `IPV4` spelling; export names are read leniently so that
/// `validate_syntax` can report bad ones. Throws DplSyntaxError.
DplPattern parse_dpl(const std::string& text);

struct Diagnostic {
  std::string code;  // duplicate-export, invalid-export-name, bad-quantifier, ...
  std::string message;
  /// Index path from the top-level fragment down to the offending one.
  std::vector<std::size_t> path;
};

std::vector<Diagnostic> validate_syntax(const DplPattern& p);

}  // namespace rx2dpl::dpl
