#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/optimize/fragments.hpp"
#include "rx2dpl/optimize/metrics.hpp"

namespace rx2dpl::optimize {

struct LabeledPattern {
  std::string regex;
  /// Matcher that fits each fragment of the converted pattern; fragments
  /// not listed fit none.
  std::map<std::size_t, dpl::BuiltinKind> labels;
};

struct TechnologyDataset {
  std::string name;
  std::vector<std::string> log_lines;
  std::vector<LabeledPattern> patterns;
};

/// Reads `<dir>/<name>.log` (one entry per line), `<dir>/<name>.regex` (one
/// regex per line) and `<dir>/<name>.labels.json` (an array aligned with the
/// regex lines, each an object mapping fragment index to matcher name).
TechnologyDataset load_technology(const std::string& dir, const std::string& name);
/// Every technology with a `.regex` file in the directory, sorted by name.
std::vector<TechnologyDataset> load_dataset(const std::string& dir);

using Suggester = std::function<std::vector<Suggestion>(const dpl::DplPattern&)>;

struct JudgedSuggestion {
  Suggestion suggestion;
  bool true_positive = false;
  std::string note;
};

struct PatternEvaluation {
  std::string technology;
  std::string regex;
  std::string dpl;
  std::size_t fragments = 0;
  std::size_t test_lines = 0;
  std::vector<JudgedSuggestion> judged;
  std::vector<std::string> diagnostics;
};

struct OptimizerEvaluation {
  std::size_t fragments = 0;
  std::map<dpl::BuiltinKind, ConfusionCounts> counts;
  std::map<dpl::BuiltinKind, MetricsReport> metrics;
  MetricsReport average;
  std::vector<PatternEvaluation> patterns;
};

/// Converts each regex, asks the suggester, and judges every suggestion by
/// applying it and matching all log lines the regex accepts in full: TP when
/// every line still matches, FP otherwise. TIMESTAMP suggestions count as TP
/// when the fragment is labelled TIMESTAMP, whatever the format. Fragments
/// without a suggestion of a matcher are FN when labelled with it, else TN.
OptimizerEvaluation evaluate_optimizer(const std::vector<TechnologyDataset>& data, const Suggester& suggester);

nlohmann::json to_json(const OptimizerEvaluation& e);
std::string evaluation_to_table(const OptimizerEvaluation& e);

}  // namespace rx2dpl::optimize
