#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::regex {

enum class Feature : std::uint8_t {
  named_group,
  greedy_quantifier,
  literal_character,
  digit,
  char_representation,
  dot,
  char_class,
  space,
  word,
  negated_char_class,
  lazy_quantifier,
  capturing_group,
  line_start,
  alternative,
  quantified_group,
  non_space,
  non_capturing_group,
  non_word,
  line_end,
  optional_group,
  non_digit,
  lookahead,
  quantified_named_group,
  non_word_boundary,
  possessive_quantifier,
};

inline constexpr std::size_t kFeatureCount = 25;

const char* feature_name(Feature f);
const std::array<Feature, kFeatureCount>& all_features();

/// Quantifier strategy tallies. Keys are strategy tags (FGQ, LGQ, ...,
/// "remaining"); filled from conversion results, not by `census` itself.
struct StrategyCounters {
  std::map<std::string, std::size_t> greedy;
  std::map<std::string, std::size_t> lazy;
};

struct FeatureCensus {
  std::array<std::size_t, kFeatureCount> totals{};
  StrategyCounters strategies;

  std::size_t total(Feature f) const { return totals[static_cast<std::size_t>(f)]; }
  bool affected(Feature f) const { return total(f) > 0; }
};

FeatureCensus census(const RegexAst& ast);

struct CensusDiagnostic {
  std::size_t line = 0;  // 1-based line in the input
  std::string text;
  std::string message;
};

struct CorpusCensus {
  std::size_t lines_read = 0;
  std::size_t duplicates = 0;
  std::size_t analyzed = 0;
  std::array<std::size_t, kFeatureCount> totals{};
  std::array<std::size_t, kFeatureCount> affected{};
  /// Strategy totals and number of regexes with at least one hit per tag.
  StrategyCounters strategy_totals;
  StrategyCounters strategy_affected;
  std::vector<CensusDiagnostic> diagnostics;
  /// Distinct, successfully parsed, normalized regexes in corpus order.
  std::vector<RegexAst> regexes;

  double affected_pct(Feature f) const;
  void add_strategies(const StrategyCounters& per_regex);
};

/// Parses, deduplicates (exact text), normalizes and counts. Lines that are
/// blank or start with `#` are ignored; unparseable lines become diagnostics.
CorpusCensus census_corpus(const std::vector<std::string>& lines);

std::vector<std::string> read_corpus_file(const std::string& path);

/// Rows ordered by affected count, descending; table order breaks ties.
std::vector<Feature> census_row_order(const CorpusCensus& c);
nlohmann::json census_to_json(const CorpusCensus& c);
std::string census_to_table(const CorpusCensus& c);

}  // namespace rx2dpl::regex
