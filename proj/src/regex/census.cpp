#include "rx2dpl/regex/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"

namespace rx2dpl::regex {

const char* feature_name(Feature f) {
  switch (f) {
    case Feature::named_group: return "Named capturing group";
    case Feature::greedy_quantifier: return "Greedy quantifier";
    case Feature::literal_character: return "Literal character";
    case Feature::digit: return "Digit matcher";
    case Feature::char_representation: return "Character representation";
    case Feature::dot: return "Dot-matcher";
    case Feature::char_class: return "Character class";
    case Feature::space: return "Space matcher";
    case Feature::word: return "Word matcher";
    case Feature::negated_char_class: return "Negated character class";
    case Feature::lazy_quantifier: return "Lazy quantifier";
    case Feature::capturing_group: return "Capturing group";
    case Feature::line_start: return "Line start";
    case Feature::alternative: return "Alternative";
    case Feature::quantified_group: return "Quantified group";
    case Feature::non_space: return "Non-space matcher";
    case Feature::non_capturing_group: return "Non-capturing group";
    case Feature::non_word: return "Non-word matcher";
    case Feature::line_end: return "Line end";
    case Feature::optional_group: return "Optional group";
    case Feature::non_digit: return "Non-digit matcher";
    case Feature::lookahead: return "Positive lookahead";
    case Feature::quantified_named_group: return "Quantified named capturing group";
    case Feature::non_word_boundary: return "Non-word boundary";
    case Feature::possessive_quantifier: return "Possessive quantifier";
  }
  return "?";
}

const std::array<Feature, kFeatureCount>& all_features() {
  static const std::array<Feature, kFeatureCount> features = [] {
    std::array<Feature, kFeatureCount> a{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) a[i] = static_cast<Feature>(i);
    return a;
  }();
  return features;
}

namespace {

void bump(FeatureCensus& c, Feature f, std::size_t by = 1) { c.totals[static_cast<std::size_t>(f)] += by; }

Feature shorthand_feature(Shorthand s) {
  switch (s) {
    case Shorthand::digit: return Feature::digit;
    case Shorthand::word: return Feature::word;
    case Shorthand::space: return Feature::space;
    case Shorthand::non_digit: return Feature::non_digit;
    case Shorthand::non_word: return Feature::non_word;
    case Shorthand::non_space: return Feature::non_space;
  }
  return Feature::digit;
}

void walk(const Node& n, FeatureCensus& c, const Node* quantifier_parent) {
  switch (n.kind) {
    case NodeKind::literal:
      for (const auto& lc : n.literal)
        bump(c, lc.form == LiteralForm::representation ? Feature::char_representation : Feature::literal_character);
      break;
    case NodeKind::dot: bump(c, Feature::dot); break;
    case NodeKind::shorthand: bump(c, shorthand_feature(n.shorthand)); break;
    case NodeKind::char_class: bump(c, n.negated ? Feature::negated_char_class : Feature::char_class); break;
    case NodeKind::group: {
      if (n.group_kind == GroupKind::named) bump(c, Feature::named_group);
      if (n.group_kind == GroupKind::capturing) bump(c, Feature::capturing_group);
      if (n.group_kind == GroupKind::non_capturing) bump(c, Feature::non_capturing_group);
      if (quantifier_parent) {
        const Quantifier& q = quantifier_parent->quantifier;
        if (n.group_kind == GroupKind::named)
          bump(c, Feature::quantified_named_group);
        else if (q.mode == QuantMode::greedy && q.min == 0 && q.max == 1)
          bump(c, Feature::optional_group);
        else
          bump(c, Feature::quantified_group);
      }
      break;
    }
    case NodeKind::alternation: bump(c, Feature::alternative, n.children.size() - 1); break;
    case NodeKind::quantified:
      switch (n.quantifier.mode) {
        case QuantMode::greedy: bump(c, Feature::greedy_quantifier); break;
        case QuantMode::lazy: bump(c, Feature::lazy_quantifier); break;
        case QuantMode::possessive: bump(c, Feature::possessive_quantifier); break;
      }
      walk(n.child(), c, &n);
      return;
    case NodeKind::anchor:
      switch (n.anchor) {
        case AnchorKind::line_start: bump(c, Feature::line_start); break;
        case AnchorKind::line_end: bump(c, Feature::line_end); break;
        case AnchorKind::non_word_boundary: bump(c, Feature::non_word_boundary); break;
      }
      break;
    case NodeKind::lookahead: bump(c, Feature::lookahead); break;
    case NodeKind::sequence: break;
  }
  for (const auto& ch : n.children) walk(ch, c, nullptr);
}

bool skip_line(const std::string& line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

}  // namespace

FeatureCensus census(const RegexAst& ast) {
  FeatureCensus c;
  walk(ast.root, c, nullptr);
  return c;
}

double CorpusCensus::affected_pct(Feature f) const {
  if (analyzed == 0) return 0.0;
  return 100.0 * static_cast<double>(affected[static_cast<std::size_t>(f)]) / static_cast<double>(analyzed);
}

void CorpusCensus::add_strategies(const StrategyCounters& per_regex) {
  for (const auto& [tag, n] : per_regex.greedy) {
    strategy_totals.greedy[tag] += n;
    if (n > 0) ++strategy_affected.greedy[tag];
  }
  for (const auto& [tag, n] : per_regex.lazy) {
    strategy_totals.lazy[tag] += n;
    if (n > 0) ++strategy_affected.lazy[tag];
  }
}

CorpusCensus census_corpus(const std::vector<std::string>& lines) {
  CorpusCensus out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    ++out.lines_read;
    if (!seen.insert(line).second) {
      ++out.duplicates;
      continue;
    }
    try {
      RegexAst ast = normalize(parse_regex(line));
      FeatureCensus c = census(ast);
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        out.totals[f] += c.totals[f];
        if (c.totals[f] > 0) ++out.affected[f];
      }
      ++out.analyzed;
      out.regexes.push_back(std::move(ast));
    } catch (const SyntaxError& e) {
      out.diagnostics.push_back({i + 1, line, "offset " + std::to_string(e.position()) + ": " + e.detail()});
    }
  }
  return out;
}

std::vector<std::string> read_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<Feature> census_row_order(const CorpusCensus& c) {
  std::vector<Feature> rows(all_features().begin(), all_features().end());
  std::stable_sort(rows.begin(), rows.end(), [&](Feature a, Feature b) {
    return c.affected[static_cast<std::size_t>(a)] > c.affected[static_cast<std::size_t>(b)];
  });
  return rows;
}

namespace {

std::string pct_text(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", pct);
  return buf;
}

}  // namespace

nlohmann::json census_to_json(const CorpusCensus& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (Feature f : census_row_order(c)) {
    std::size_t i = static_cast<std::size_t>(f);
    rows.push_back({{"feature", feature_name(f)},
                    {"total", c.totals[i]},
                    {"affected", c.affected[i]},
                    {"affected_pct", std::round(c.affected_pct(f) * 10.0) / 10.0}});
  }
  return rows;
}

std::string census_to_table(const CorpusCensus& c) {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"Feature", "Total", "Affected", "Affected %"});
  for (Feature f : census_row_order(c)) {
    std::size_t i = static_cast<std::size_t>(f);
    rows.push_back({feature_name(f), std::to_string(c.totals[i]), std::to_string(c.affected[i]),
                    pct_text(c.affected_pct(f))});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& r : rows)
    for (std::size_t k = 0; k < 4; ++k) width[k] = std::max(width[k], r[k].size());
  std::string out;
  for (const auto& r : rows) {
    out += r[0] + std::string(width[0] - r[0].size(), ' ');
    for (std::size_t k = 1; k < 4; ++k) out += "  " + std::string(width[k] - r[k].size(), ' ') + r[k];
    out += '\n';
  }
  out += "Regexes analyzed: " + std::to_string(c.analyzed) + " (duplicates removed: " + std::to_string(c.duplicates) +
         ", skipped: " + std::to_string(c.diagnostics.size()) + ")\n";
  return out;
}

}  // namespace rx2dpl::regex
