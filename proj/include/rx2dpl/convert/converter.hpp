#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/convert/analysis.hpp"
#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/regex/ast.hpp"
#include "rx2dpl/regex/census.hpp"

namespace rx2dpl::convert {

enum class Classification : std::uint8_t { safe, best_effort, impossible };

/// "safe", "best-effort", "impossible".
const char* classification_name(Classification c);

struct ConvertOptions {
  /// Prefix a lazy match-anything fragment so that the pattern finds the
  /// leftmost match like an unanchored regex search. Skipped when the
  /// expression starts with `^`.
  bool unanchored_wrapper = false;
};

/// One entry per top-level output fragment.
struct FragmentNote {
  std::size_t fragment_index = 0;
  /// Strategy of the first quantifier inside the fragment, `direct` if none.
  Strategy strategy = Strategy::direct;
  std::optional<std::string> unsafe_reason;
};

/// One entry per quantified node of the source.
struct QuantifierNote {
  regex::Span span;
  regex::QuantMode mode = regex::QuantMode::greedy;
  Strategy strategy = Strategy::none;
  Emit emit = Emit::as_is;
  bool dot = false;
  std::optional<std::string> unsafe_reason;
  /// Top-level fragment holding the output; absent when the node was omitted.
  std::optional<std::size_t> fragment_index;
};

struct ConversionResult {
  std::string source;
  std::optional<dpl::DplPattern> pattern;
  Classification classification = Classification::impossible;
  std::vector<FragmentNote> fragment_notes;
  std::vector<QuantifierNote> quantifiers;
  std::vector<IntersectionQuery> queries;
  std::optional<std::string> impossible_reason;
  bool unanchored_wrapper = false;
  std::vector<std::string> notes;

  /// Greedy and lazy tallies by strategy tag; misses count as "remaining".
  regex::StrategyCounters strategy_counters() const;
  /// Some unsafe quantifier applies to a dot.
  bool unsafe_dot() const;
};

/// Expects a normalized expression. Throws UnsupportedFeature for `\B`.
ConversionResult convert(const regex::RegexAst& ast, const ConvertOptions& opts = {});
/// Parses, normalizes and converts.
ConversionResult convert_regex(const std::string& source, const ConvertOptions& opts = {});

nlohmann::json to_json(const ConversionResult& r);

}  // namespace rx2dpl::convert
