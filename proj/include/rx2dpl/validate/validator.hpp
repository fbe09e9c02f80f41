#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/automata/alphabet.hpp"
#include "rx2dpl/charset.hpp"
#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::validate {

struct SuiteOptions {
  /// Extra repetitions drawn above a quantifier's minimum for positives.
  std::size_t max_reps = 6;
  /// Negatives are at most max(min_negative_len, 2 * longest positive) long.
  std::size_t min_negative_len = 16;
  /// Bytes samples are drawn from.
  CharSet universe = automata::default_universe();
};

struct TestSuite {
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  std::uint64_t seed = 0;
  std::size_t requested_positives = 0;
  std::size_t requested_negatives = 0;
  bool negatives_generated = false;
  /// Why negatives are missing or a sample is short.
  std::vector<std::string> diagnostics;
};

/// Positives come from a random walk checked by the reference matcher;
/// negatives are drawn from the complement of the expression's language and
/// are only produced for lookahead-free expressions. Throws EmptyLanguage
/// when no positive can be produced.
TestSuite generate_suite(const regex::RegexAst& ast, std::size_t n_pos, std::size_t n_neg, std::uint64_t seed,
                         const SuiteOptions& opts = {});

enum class CaseKind : std::uint8_t { positive, negative };

struct Outcome {
  bool matched = false;
  std::size_t end = 0;
  std::map<std::string, std::string> captures;
  /// Set when the run was cut off by a step budget.
  std::optional<std::string> error;
  bool operator==(const Outcome&) const = default;
};

struct CaseRecord {
  std::string input;
  CaseKind kind = CaseKind::positive;
  Outcome regex_outcome;
  Outcome dpl_outcome;
  /// "name: regex='..' dpl='..'" for every differing capture.
  std::vector<std::string> export_diffs;
  bool passed = false;
};

struct DiffOptions {
  std::size_t regex_step_budget = 10'000'000;
  std::size_t dpl_step_budget = 10'000'000;
  /// Keep records of passing cases too.
  bool keep_passing = false;
};

struct TestReport {
  bool passed = true;
  std::size_t positives = 0;
  std::size_t positives_failed = 0;
  std::size_t negatives = 0;
  std::size_t negatives_failed = 0;
  bool negatives_generated = false;
  bool unanchored_wrapper = false;
  std::vector<CaseRecord> cases;
  std::vector<std::string> diagnostics;
};

/// Both sides match once from offset 0 (the regex unanchored when the
/// conversion added a skip prefix). A case passes when match flag, end
/// offset and every named capture agree.
TestReport run_differential(const regex::RegexAst& ast, const convert::ConversionResult& result,
                            const TestSuite& suite, const DiffOptions& opts = {});

Outcome regex_outcome(const regex::RegexAst& ast, const std::string& input, bool anchored, std::size_t budget);
Outcome dpl_outcome(const dpl::DplPattern& p, const std::string& input, std::size_t budget);

struct CorpusOptions {
  std::size_t n_pos = 200;
  std::size_t n_neg = 200;
  std::vector<std::uint64_t> seeds{1};
  SuiteOptions suite;
  DiffOptions diff;
  convert::ConvertOptions convert;
};

struct RegexEvaluation {
  std::string source;
  convert::Classification classification = convert::Classification::impossible;
  std::optional<std::string> impossible_reason;
  std::optional<std::string> dpl;
  bool unsafe_dot = false;
  regex::StrategyCounters strategies;
  /// Differential results; absent for impossible conversions.
  std::optional<bool> passed;
  std::size_t cases = 0;
  std::size_t failed = 0;
  std::vector<std::string> diagnostics;
};

struct CorpusReport {
  std::size_t lines_read = 0;
  std::size_t duplicates = 0;
  std::size_t parse_errors = 0;
  std::size_t total = 0;
  std::size_t safe = 0;
  std::size_t best_effort = 0;
  std::size_t best_effort_dot = 0;
  std::size_t best_effort_other = 0;
  std::size_t impossible = 0;
  /// Impossible reasons and how often each occurred.
  std::map<std::string, std::size_t> impossible_reasons;
  /// Safe conversions whose differential run failed; expected to be zero.
  std::size_t safe_failures = 0;
  std::size_t best_effort_passing = 0;
  regex::StrategyCounters strategy_totals;
  regex::StrategyCounters strategy_affected;
  std::vector<RegexEvaluation> regexes;
  std::vector<std::string> diagnostics;

  double pct(std::size_t n) const { return total ? 100.0 * static_cast<double>(n) / static_cast<double>(total) : 0.0; }
};

/// Classifies every distinct regex of the corpus and runs the differential
/// harness on the convertible ones. Never throws for individual entries.
CorpusReport evaluate_corpus(const std::vector<std::string>& lines, const CorpusOptions& opts = {});

nlohmann::json to_json(const TestSuite& s);
nlohmann::json to_json(const TestReport& r);
nlohmann::json to_json(const CorpusReport& r);
std::string report_to_table(const CorpusReport& r);

}  // namespace rx2dpl::validate
