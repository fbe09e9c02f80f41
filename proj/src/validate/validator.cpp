#include "rx2dpl/validate/validator.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "rx2dpl/automata/compile.hpp"
#include "rx2dpl/automata/sampling.hpp"
#include "rx2dpl/dpl/engine.hpp"
#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/census.hpp"
#include "rx2dpl/regex/matcher.hpp"

namespace rx2dpl::validate {

using nlohmann::json;

namespace {

constexpr std::uint64_t kNegativeSeedSalt = 0x9E3779B97F4A7C15ULL;

const char* kind_name(CaseKind k) { return k == CaseKind::positive ? "positive" : "negative"; }

json outcome_json(const Outcome& o) {
  json j{{"matched", o.matched}, {"end", o.end}, {"captures", o.captures}};
  if (o.error) j["error"] = *o.error;
  return j;
}

void merge(std::map<std::string, std::size_t>& into, const std::map<std::string, std::size_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

void merge_affected(std::map<std::string, std::size_t>& into, const std::map<std::string, std::size_t>& from) {
  for (const auto& [k, v] : from)
    if (v) into[k] += 1;
}

}  // namespace

TestSuite generate_suite(const regex::RegexAst& ast, std::size_t n_pos, std::size_t n_neg, std::uint64_t seed,
                         const SuiteOptions& opts) {
  if (n_pos == 0) throw Error("at least one positive sample is required");
  TestSuite s;
  s.seed = seed;
  s.requested_positives = n_pos;
  s.requested_negatives = n_neg;
  automata::PositiveOptions po;
  po.universe = opts.universe;
  s.positives = automata::sample_positive(ast, n_pos, opts.max_reps, seed, po);
  if (s.positives.empty()) throw EmptyLanguage();
  if (s.positives.size() < n_pos)
    s.diagnostics.push_back("only " + std::to_string(s.positives.size()) + " positives could be drawn");

  if (n_neg == 0) return s;
  if (regex::contains_kind(ast.root, regex::NodeKind::lookahead)) {
    s.diagnostics.emplace_back("negatives omitted: expression contains a lookahead");
    return s;
  }
  std::size_t longest = 0;
  for (const auto& p : s.positives) longest = std::max(longest, p.size());
  std::size_t max_len = std::max(opts.min_negative_len, 2 * longest);
  try {
    automata::CompileOptions co;
    co.relax = true;
    co.universe = opts.universe;
    automata::Dfa rejected = automata::complement(automata::compile(ast, co));
    auto drawn = automata::sample(rejected, n_neg, max_len, seed ^ kNegativeSeedSalt);
    regex::ReferenceMatcher m(ast);
    regex::MatchOptions full;
    full.anchored = true;
    full.require_full = true;
    for (auto& d : drawn) {
      try {
        if (!m.match(d, full).matched) s.negatives.push_back(std::move(d));
      } catch (const StepLimitExceeded&) {
        // Undecided strings are left out of the suite.
      }
    }
    s.negatives_generated = true;
  } catch (const EmptyLanguage&) {
    s.diagnostics.emplace_back("negatives omitted: every string up to the length cap matches");
  } catch (const Error& e) {
    s.diagnostics.push_back(std::string("negatives omitted: ") + e.what());
  }
  return s;
}

Outcome regex_outcome(const regex::RegexAst& ast, const std::string& input, bool anchored, std::size_t budget) {
  Outcome o;
  regex::MatchOptions mo;
  mo.anchored = anchored;
  mo.step_budget = budget;
  try {
    auto r = regex::reference_match(ast, input, mo);
    o.matched = r.matched;
    if (r.matched) {
      o.end = r.end;
      o.captures = r.captures;
    }
  } catch (const StepLimitExceeded&) {
    o.error = "regex step budget exhausted";
  }
  return o;
}

Outcome dpl_outcome(const dpl::DplPattern& p, const std::string& input, std::size_t budget) {
  Outcome o;
  dpl::EngineOptions eo;
  eo.step_budget = budget;
  try {
    auto r = dpl::dpl_match(p, input, eo);
    o.matched = r.matched;
    if (r.matched) {
      o.end = r.end;
      for (const auto& [name, v] : r.exports) o.captures[name] = v.text;
    }
  } catch (const StepLimitExceeded&) {
    o.error = "DPL step budget exhausted";
  }
  return o;
}

TestReport run_differential(const regex::RegexAst& ast, const convert::ConversionResult& result,
                            const TestSuite& suite, const DiffOptions& opts) {
  if (!result.pattern) throw Error("differential testing needs a converted pattern");
  TestReport rep;
  rep.negatives_generated = suite.negatives_generated;
  rep.unanchored_wrapper = result.unanchored_wrapper;
  rep.diagnostics = suite.diagnostics;
  regex::ReferenceMatcher ref(ast);
  dpl::DplEngine engine(*result.pattern);
  regex::MatchOptions mo;
  mo.anchored = !result.unanchored_wrapper;
  mo.step_budget = opts.regex_step_budget;
  dpl::EngineOptions eo;
  eo.step_budget = opts.dpl_step_budget;

  auto run = [&](const std::string& input, CaseKind kind) {
    CaseRecord c;
    c.input = input;
    c.kind = kind;
    try {
      auto r = ref.match(input, mo);
      c.regex_outcome.matched = r.matched;
      if (r.matched) {
        c.regex_outcome.end = r.end;
        c.regex_outcome.captures = r.captures;
      }
    } catch (const StepLimitExceeded&) {
      c.regex_outcome.error = "regex step budget exhausted";
    }
    try {
      auto d = engine.match(input, eo);
      c.dpl_outcome.matched = d.matched;
      if (d.matched) {
        c.dpl_outcome.end = d.end;
        for (const auto& [name, v] : d.exports) c.dpl_outcome.captures[name] = v.text;
      }
    } catch (const StepLimitExceeded&) {
      c.dpl_outcome.error = "DPL step budget exhausted";
    }
    std::map<std::string, std::string> names;
    for (const auto& [k, v] : c.regex_outcome.captures) names[k];
    for (const auto& [k, v] : c.dpl_outcome.captures) names[k];
    for (const auto& [k, unused] : names) {
      auto a = c.regex_outcome.captures.find(k);
      auto b = c.dpl_outcome.captures.find(k);
      std::string av = a == c.regex_outcome.captures.end() ? "<unset>" : "'" + a->second + "'";
      std::string bv = b == c.dpl_outcome.captures.end() ? "<unset>" : "'" + b->second + "'";
      if (av != bv) c.export_diffs.push_back(k + ": regex=" + av + " dpl=" + bv);
    }
    c.passed = !c.regex_outcome.error && !c.dpl_outcome.error && c.regex_outcome == c.dpl_outcome;
    if (kind == CaseKind::positive) {
      ++rep.positives;
      if (!c.passed) ++rep.positives_failed;
    } else {
      ++rep.negatives;
      if (!c.passed) ++rep.negatives_failed;
    }
    if (!c.passed) rep.passed = false;
    if (!c.passed || opts.keep_passing) rep.cases.push_back(std::move(c));
  };
  for (const auto& p : suite.positives) run(p, CaseKind::positive);
  for (const auto& n : suite.negatives) run(n, CaseKind::negative);
  return rep;
}

CorpusReport evaluate_corpus(const std::vector<std::string>& lines, const CorpusOptions& opts) {
  CorpusReport out;
  auto census = regex::census_corpus(lines);
  out.lines_read = census.lines_read;
  out.duplicates = census.duplicates;
  out.parse_errors = census.diagnostics.size();
  for (const auto& d : census.diagnostics)
    out.diagnostics.push_back("line " + std::to_string(d.line) + ": " + d.message);

  for (const auto& ast : census.regexes) {
    RegexEvaluation ev;
    ev.source = ast.source;
    ++out.total;
    convert::ConversionResult conv;
    try {
      conv = convert::convert(ast, opts.convert);
    } catch (const UnsupportedFeature& e) {
      ev.classification = convert::Classification::impossible;
      ev.impossible_reason = "unsupported: " + e.feature();
      ++out.impossible;
      ++out.impossible_reasons[*ev.impossible_reason];
      out.regexes.push_back(std::move(ev));
      continue;
    }
    ev.classification = conv.classification;
    ev.impossible_reason = conv.impossible_reason;
    ev.unsafe_dot = conv.unsafe_dot();
    ev.strategies = conv.strategy_counters();
    merge(out.strategy_totals.greedy, ev.strategies.greedy);
    merge(out.strategy_totals.lazy, ev.strategies.lazy);
    merge_affected(out.strategy_affected.greedy, ev.strategies.greedy);
    merge_affected(out.strategy_affected.lazy, ev.strategies.lazy);
    switch (conv.classification) {
      case convert::Classification::safe: ++out.safe; break;
      case convert::Classification::best_effort:
        ++out.best_effort;
        if (ev.unsafe_dot) ++out.best_effort_dot;
        else ++out.best_effort_other;
        break;
      case convert::Classification::impossible:
        ++out.impossible;
        ++out.impossible_reasons[conv.impossible_reason.value_or("")];
        break;
    }
    if (conv.pattern) {
      ev.dpl = dpl::serialize(*conv.pattern);
      if (opts.n_pos > 0) {
        bool ok = true;
        for (auto seed : opts.seeds) {
          try {
            auto suite = generate_suite(ast, opts.n_pos, opts.n_neg, seed, opts.suite);
            auto rep = run_differential(ast, conv, suite, opts.diff);
            ev.cases += rep.positives + rep.negatives;
            ev.failed += rep.positives_failed + rep.negatives_failed;
            ok = ok && rep.passed;
            for (const auto& d : suite.diagnostics) ev.diagnostics.push_back(d);
          } catch (const Error& e) {
            ev.diagnostics.push_back(std::string("suite: ") + e.what());
          }
        }
        ev.passed = ok;
        if (!ok && conv.classification == convert::Classification::safe) ++out.safe_failures;
        if (ok && conv.classification == convert::Classification::best_effort) ++out.best_effort_passing;
      }
    }
    out.regexes.push_back(std::move(ev));
  }
  return out;
}

json to_json(const TestSuite& s) {
  return json{{"seed", s.seed},
              {"positives", s.positives},
              {"negatives", s.negatives},
              {"requested_positives", s.requested_positives},
              {"requested_negatives", s.requested_negatives},
              {"negatives_generated", s.negatives_generated},
              {"diagnostics", s.diagnostics}};
}

json to_json(const TestReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"input", c.input},
                     {"kind", kind_name(c.kind)},
                     {"regex_outcome", outcome_json(c.regex_outcome)},
                     {"dpl_outcome", outcome_json(c.dpl_outcome)},
                     {"export_diffs", c.export_diffs},
                     {"passed", c.passed}});
  return json{{"passed", r.passed},
              {"counts",
               {{"positives", r.positives},
                {"positives_failed", r.positives_failed},
                {"negatives", r.negatives},
                {"negatives_failed", r.negatives_failed}}},
              {"negatives_generated", r.negatives_generated},
              {"unanchored_wrapper", r.unanchored_wrapper},
              {"diagnostics", r.diagnostics},
              {"cases", cases}};
}

json to_json(const CorpusReport& r) {
  json regexes = json::array();
  for (const auto& e : r.regexes) {
    json j{{"source", e.source},
           {"classification", convert::classification_name(e.classification)},
           {"impossible_reason", e.impossible_reason ? json(*e.impossible_reason) : json(nullptr)},
           {"dpl", e.dpl ? json(*e.dpl) : json(nullptr)},
           {"unsafe_dot", e.unsafe_dot},
           {"strategies", {{"greedy", e.strategies.greedy}, {"lazy", e.strategies.lazy}}},
           {"passed", e.passed ? json(*e.passed) : json(nullptr)},
           {"cases", e.cases},
           {"failed", e.failed},
           {"diagnostics", e.diagnostics}};
    regexes.push_back(std::move(j));
  }
  auto bucket = [&](std::size_t n) { return json{{"count", n}, {"pct", r.pct(n)}}; };
  return json{{"lines_read", r.lines_read},
              {"duplicates", r.duplicates},
              {"parse_errors", r.parse_errors},
              {"total", r.total},
              {"safe", bucket(r.safe)},
              {"best_effort", bucket(r.best_effort)},
              {"best_effort_dot", bucket(r.best_effort_dot)},
              {"best_effort_other", bucket(r.best_effort_other)},
              {"impossible", bucket(r.impossible)},
              {"impossible_reasons", r.impossible_reasons},
              {"safe_failures", r.safe_failures},
              {"best_effort_passing", r.best_effort_passing},
              {"strategy_totals", {{"greedy", r.strategy_totals.greedy}, {"lazy", r.strategy_totals.lazy}}},
              {"strategy_affected", {{"greedy", r.strategy_affected.greedy}, {"lazy", r.strategy_affected.lazy}}},
              {"diagnostics", r.diagnostics},
              {"regexes", regexes}};
}

std::string report_to_table(const CorpusReport& r) {
  std::ostringstream os;
  char buf[160];
  auto row = [&](const char* label, std::size_t n) {
    std::snprintf(buf, sizeof buf, "%-44s %6zu %6.1f%%\n", label, n, r.pct(n));
    os << buf;
  };
  os << "Conversion results (" << r.total << " distinct regexes)\n";
  row("safe", r.safe);
  row("best-effort: dot-matcher with greedy or lazy quantifier", r.best_effort_dot);
  row("best-effort: remaining quantifiers", r.best_effort_other);
  row("impossible", r.impossible);
  for (const auto& [reason, n] : r.impossible_reasons) {
    std::string label = "  " + reason;
    row(label.c_str(), n);
  }
  auto strategies = [&](const char* title, const std::map<std::string, std::size_t>& totals,
                        const std::map<std::string, std::size_t>& affected) {
    os << title << "\n";
    for (const auto& [tag, n] : totals) {
      auto it = affected.find(tag);
      std::size_t a = it == affected.end() ? 0 : it->second;
      std::snprintf(buf, sizeof buf, "  %-12s total %6zu  regexes %6zu %6.1f%%\n", tag.c_str(), n, a, r.pct(a));
      os << buf;
    }
  };
  strategies("Greedy quantifier strategies", r.strategy_totals.greedy, r.strategy_affected.greedy);
  strategies("Lazy quantifier strategies", r.strategy_totals.lazy, r.strategy_affected.lazy);
  os << "safe conversions failing differential tests: " << r.safe_failures << "\n";
  return os.str();
}

}  // namespace rx2dpl::validate
