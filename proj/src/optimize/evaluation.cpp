#include "rx2dpl/optimize/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/dpl/engine.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/matcher.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"

namespace rx2dpl::optimize {

using dpl::BuiltinKind;
using nlohmann::json;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool all_match(const dpl::DplPattern& p, const std::vector<const std::string*>& lines) {
  dpl::DplEngine engine(p);
  dpl::EngineOptions opts;
  opts.mode = dpl::MatchMode::full;
  opts.step_budget = 1'000'000;
  for (const auto* l : lines) {
    try {
      if (!engine.match(*l, opts).matched) return false;
    } catch (const StepLimitExceeded&) {
      return false;
    }
  }
  return true;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "   -";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

}  // namespace

TechnologyDataset load_technology(const std::string& dir, const std::string& name) {
  TechnologyDataset t;
  t.name = name;
  std::string base = dir + "/" + name;
  t.log_lines = read_lines(base + ".log");
  t.log_lines.erase(std::remove(t.log_lines.begin(), t.log_lines.end(), std::string()), t.log_lines.end());
  auto regexes = read_lines(base + ".regex");
  regexes.erase(std::remove(regexes.begin(), regexes.end(), std::string()), regexes.end());
  std::ifstream lf(base + ".labels.json");
  if (!lf) throw Error("cannot open " + base + ".labels.json");
  json labels;
  try {
    labels = json::parse(lf);
  } catch (const json::exception& e) {
    throw Error(base + ".labels.json: " + e.what());
  }
  if (!labels.is_array() || labels.size() != regexes.size())
    throw Error(base + ".labels.json must hold one object per regex line");
  for (std::size_t i = 0; i < regexes.size(); ++i) {
    LabeledPattern lp;
    lp.regex = regexes[i];
    for (const auto& [k, v] : labels[i].items()) {
      auto kind = dpl::builtin_from_name(v.get<std::string>());
      if (!kind || !is_suggestible(*kind)) throw Error(base + ".labels.json: unknown matcher " + v.dump());
      lp.labels[static_cast<std::size_t>(std::stoul(k))] = *kind;
    }
    t.patterns.push_back(std::move(lp));
  }
  return t;
}

std::vector<TechnologyDataset> load_dataset(const std::string& dir) {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".regex") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  std::vector<TechnologyDataset> out;
  for (const auto& n : names) out.push_back(load_technology(dir, n));
  return out;
}

OptimizerEvaluation evaluate_optimizer(const std::vector<TechnologyDataset>& data, const Suggester& suggester) {
  OptimizerEvaluation ev;
  for (auto k : suggestible_matchers()) ev.counts[k];
  for (const auto& tech : data) {
    for (const auto& lp : tech.patterns) {
      PatternEvaluation pe;
      pe.technology = tech.name;
      pe.regex = lp.regex;
      regex::RegexAst ast;
      convert::ConversionResult conv;
      try {
        ast = regex::normalize(regex::parse_regex(lp.regex));
        conv = convert::convert(ast);
      } catch (const Error& e) {
        pe.diagnostics.push_back(std::string("not converted: ") + e.what());
        ev.patterns.push_back(std::move(pe));
        continue;
      }
      if (!conv.pattern) {
        pe.diagnostics.push_back("not converted: " + conv.impossible_reason.value_or("impossible"));
        ev.patterns.push_back(std::move(pe));
        continue;
      }
      const dpl::DplPattern& pattern = *conv.pattern;
      pe.dpl = dpl::serialize(pattern);
      pe.fragments = pattern.fragments.size();
      ev.fragments += pe.fragments;

      regex::ReferenceMatcher ref(ast);
      regex::MatchOptions full;
      full.anchored = true;
      full.require_full = true;
      std::vector<const std::string*> lines;
      for (const auto& l : tech.log_lines) {
        try {
          if (ref.match(l, full).matched) lines.push_back(&l);
        } catch (const StepLimitExceeded&) {
        }
      }
      pe.test_lines = lines.size();
      if (lines.empty()) pe.diagnostics.emplace_back("no log line is matched by the regex");

      std::set<std::pair<std::size_t, BuiltinKind>> suggested;
      for (const auto& s : suggester(pattern)) {
        if (s.fragment_index >= pattern.fragments.size() || !is_suggestible(s.proposed)) continue;
        if (!suggested.insert({s.fragment_index, s.proposed}).second) continue;
        JudgedSuggestion j{s, false, {}};
        auto label = lp.labels.find(s.fragment_index);
        if (s.proposed == BuiltinKind::TIMESTAMP) {
          j.true_positive = label != lp.labels.end() && label->second == BuiltinKind::TIMESTAMP;
          j.note = j.true_positive ? "fragment hit" : "fragment is not a timestamp";
        } else {
          try {
            bool ok = !lines.empty() && all_match(apply_suggestion(pattern, s), lines);
            j.true_positive = ok;
            j.note = ok ? "all test lines match" : "some test line no longer matches";
          } catch (const Error& e) {
            j.note = std::string("not applicable: ") + e.what();
          }
        }
        auto& c = ev.counts[s.proposed];
        if (j.true_positive) ++c.tp;
        else ++c.fp;
        pe.judged.push_back(std::move(j));
      }
      for (auto k : suggestible_matchers()) {
        for (std::size_t i = 0; i < pattern.fragments.size(); ++i) {
          if (suggested.count({i, k})) continue;
          auto label = lp.labels.find(i);
          if (label != lp.labels.end() && label->second == k) ++ev.counts[k].fn;
          else ++ev.counts[k].tn;
        }
      }
      ev.patterns.push_back(std::move(pe));
    }
  }
  std::vector<MetricsReport> all;
  for (auto k : suggestible_matchers()) {
    ev.metrics[k] = metrics(ev.counts[k]);
    all.push_back(ev.metrics[k]);
  }
  ev.average = average(all);
  return ev;
}

json to_json(const OptimizerEvaluation& e) {
  json rows = json::array();
  for (auto k : suggestible_matchers()) {
    rows.push_back({{"matcher", dpl::builtin_name(k)},
                    {"counts", to_json(e.counts.at(k))},
                    {"metrics", to_json(e.metrics.at(k))}});
  }
  json patterns = json::array();
  for (const auto& p : e.patterns) {
    json judged = json::array();
    for (const auto& j : p.judged)
      judged.push_back({{"suggestion", to_json(j.suggestion)}, {"true_positive", j.true_positive}, {"note", j.note}});
    patterns.push_back({{"technology", p.technology},
                        {"regex", p.regex},
                        {"dpl", p.dpl},
                        {"fragments", p.fragments},
                        {"test_lines", p.test_lines},
                        {"judged", judged},
                        {"diagnostics", p.diagnostics}});
  }
  return {{"fragments", e.fragments}, {"matchers", rows}, {"average", to_json(e.average)}, {"patterns", patterns}};
}

std::string evaluation_to_table(const OptimizerEvaluation& e) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %6s %5s %5s %5s %6s %9s %7s %7s %7s\n", "Matcher", "Total", "TP", "FP", "FN", "TN",
                "Precision", "Recall", "F1", "MCC");
  os << buf;
  for (auto k : suggestible_matchers()) {
    const auto& c = e.counts.at(k);
    const auto& m = e.metrics.at(k);
    std::snprintf(buf, sizeof buf, "%-10s %6zu %5zu %5zu %5zu %6zu %9s %7s %7s %7s\n", dpl::builtin_name(k), c.total(),
                  c.tp, c.fp, c.fn, c.tn, fmt(m.precision).c_str(), fmt(m.recall).c_str(), fmt(m.f1).c_str(),
                  fmt(m.mcc).c_str());
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "%-10s %6s %5s %5s %5s %6s %9s %7s %7s %7s\n", "Average", "-", "-", "-", "-", "-",
                fmt(e.average.precision).c_str(), fmt(e.average.recall).c_str(), fmt(e.average.f1).c_str(),
                fmt(e.average.mcc).c_str());
  os << buf;
  return os.str();
}

}  // namespace rx2dpl::optimize
