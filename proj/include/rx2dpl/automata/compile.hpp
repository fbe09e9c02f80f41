#pragma once

#include <cstddef>

#include "rx2dpl/automata/dfa.hpp"
#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::automata {

struct CompileOptions {
  CharSet universe = default_universe();
  /// Over-approximate possessive repetition (as greedy) and `\B` (as the
  /// empty string) instead of rejecting them. The result accepts a superset
  /// of the full-string language, which is sound for emptiness checks and
  /// for drawing strings the pattern rejects.
  bool relax = false;
  std::size_t max_nfa_states = 200'000;
  std::size_t max_dfa_states = 50'000;
};

/// Full-string language of the expression over the universe. `^` and `$`
/// hold only at the start and end of the string. Throws NonRegularFeature
/// for lookahead (and, unless relaxed, for possessive repetition and `\B`),
/// and Error when a size limit is exceeded.
Dfa compile(const regex::RegexAst& ast, const CompileOptions& opts = {});
Dfa compile(const regex::Node& node, const CompileOptions& opts = {});

/// A node whose language is every single byte of the universe; `any*` is
/// Σ*, a convenient suffix for prefix-closed languages.
regex::Node any_char_node();
regex::Node any_string_node();

}  // namespace rx2dpl::automata
