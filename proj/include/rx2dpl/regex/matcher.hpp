#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::regex {

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

struct MatchOptions {
  /// Only try a match starting at `start`.
  bool anchored = false;
  /// Accept only matches that end at the end of the input.
  bool require_full = false;
  std::size_t start = 0;
  std::size_t step_budget = kDefaultStepBudget;
};

using GroupSpan = std::optional<std::pair<std::size_t, std::size_t>>;

struct MatchResult {
  bool matched = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  /// Index 0 is the whole match; i is capture group i.
  std::vector<GroupSpan> groups;
  /// Named groups that participated in the match.
  std::map<std::string, std::string> captures;
  std::size_t steps = 0;
};

/// Backtracking matcher with PCRE semantics for the supported subset.
/// Leftmost-first; greedy, lazy and possessive repetition; lookahead is
/// atomic. Compiled once, then reentrant.
class ReferenceMatcher {
 public:
  explicit ReferenceMatcher(const RegexAst& ast);
  ~ReferenceMatcher();
  ReferenceMatcher(ReferenceMatcher&&) noexcept;
  ReferenceMatcher& operator=(ReferenceMatcher&&) noexcept;

  /// Throws StepLimitExceeded when the budget is exhausted.
  MatchResult match(std::string_view input, const MatchOptions& opts = {}) const;

  int capture_count() const;
  const std::vector<std::pair<std::string, int>>& named_groups() const;

  struct Program;

 private:
  std::unique_ptr<Program> prog_;
};

MatchResult reference_match(const RegexAst& ast, std::string_view input, const MatchOptions& opts = {});

/// Convenience: match anchored at offset 0.
inline MatchResult reference_match_at_start(const RegexAst& ast, std::string_view input) {
  MatchOptions o;
  o.anchored = true;
  return reference_match(ast, input, o);
}

}  // namespace rx2dpl::regex
