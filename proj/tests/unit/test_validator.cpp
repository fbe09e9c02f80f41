#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/matcher.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"
#include "rx2dpl/validate/validator.hpp"

using namespace rx2dpl;
using namespace rx2dpl::validate;

namespace {

regex::RegexAst ast_of(const std::string& s) { return regex::normalize(regex::parse_regex(s)); }

bool full_match(const regex::RegexAst& ast, const std::string& s) {
  regex::MatchOptions o;
  o.anchored = true;
  o.require_full = true;
  return regex::reference_match(ast, s, o).matched;
}

TestReport differential(const std::string& re, std::size_t n = 200, std::uint64_t seed = 1) {
  auto ast = ast_of(re);
  auto conv = convert::convert(ast);
  auto suite = generate_suite(ast, n, n, seed);
  return run_differential(ast, conv, suite);
}

}  // namespace

TEST(Suite, ReproducibleUnderSeed) {
  auto ast = ast_of("(?<a>[a-z]+)=\\d{1,4}(?:,\\w*)?");
  auto s1 = generate_suite(ast, 50, 50, 7);
  auto s2 = generate_suite(ast, 50, 50, 7);
  EXPECT_EQ(s1.positives, s2.positives);
  EXPECT_EQ(s1.negatives, s2.negatives);
  auto s3 = generate_suite(ast, 50, 50, 8);
  EXPECT_NE(s1.positives, s3.positives);
}

TEST(Suite, PositivesMatchAndNegativesDoNot) {
  oracle::ContextGen gen(61);
  for (int i = 0; i < 150; ++i) {
    regex::RegexAst ast;
    TestSuite s;
    try {
      ast = ast_of(gen.next());
      s = generate_suite(ast, 20, 20, static_cast<std::uint64_t>(i));
    } catch (const Error&) {
      continue;
    }
    for (const auto& p : s.positives) EXPECT_TRUE(regex::reference_match_at_start(ast, p).matched) << ast.source;
    for (const auto& n : s.negatives) EXPECT_FALSE(full_match(ast, n)) << ast.source << " on " << n;
  }
}

TEST(Suite, LookaheadOmitsNegativesWithDiagnostic) {
  auto s = generate_suite(ast_of("a(?=b)b"), 10, 10, 1);
  EXPECT_FALSE(s.negatives_generated);
  EXPECT_TRUE(s.negatives.empty());
  EXPECT_FALSE(s.diagnostics.empty());
  EXPECT_EQ(s.positives.size(), 10u);
}

TEST(Suite, EmptyLanguageThrows) { EXPECT_THROW(generate_suite(ast_of("a^b"), 5, 5, 1), EmptyLanguage); }

TEST(Suite, UniverseRestrictsSamples) {
  SuiteOptions o;
  o.universe = CharSet::range('a', 'c');
  auto s = generate_suite(ast_of(".+x?"), 30, 30, 3, o);
  for (const auto& p : s.positives)
    for (char c : p) EXPECT_TRUE((c >= 'a' && c <= 'c') || c == 'x') << p;
}

TEST(Differential, SafeConversionsPass) {
  for (const char* re : {"method=[A-Z]*", "\\d{1,3}x", "(?<k>\\w+)=(?<v>\\d+);", "\\d+?x$", ".+?abc", "a{2,5}?b",
                         "(?<addr>\\d{1,3}\\.\\d{1,3})\\s(?<rc>\\d{3})"}) {
    auto r = differential(re);
    EXPECT_TRUE(r.passed) << re;
    EXPECT_EQ(r.positives_failed + r.negatives_failed, 0u) << re;
  }
}

TEST(Differential, UnsafeGreedyFailsWithCases) {
  auto r = differential("\\w+[a-z]");
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.positives_failed, 0u);
  ASSERT_FALSE(r.cases.empty());
  const auto& c = r.cases.front();
  EXPECT_FALSE(c.passed);
  EXPECT_TRUE(c.regex_outcome.matched);
  EXPECT_FALSE(c.dpl_outcome.matched);
}

TEST(Differential, CaptureMismatchIsReported) {
  // The regex backtracks the group, the DPL cannot.
  auto r = differential("(?<a>\\d+)\\d");
  EXPECT_FALSE(r.passed);
}

TEST(Differential, JsonShape) {
  auto r = differential("\\w+[a-z]", 30);
  EXPECT_EQ(oracle::check_report_json(to_json(r)), "");
  auto ok = differential("ab*c", 30);
  EXPECT_EQ(oracle::check_report_json(to_json(ok)), "");
}

TEST(Corpus, PartitionSumsToTotal) {
  std::vector<std::string> lines{"abc",     "\\w+[a-z]", "(?<n>a)*", "a\\Bb", "(", "abc", "\\d{1,3}x",
                                 ".*x",     "# comment", "",          "a(?=b)b", "(?<a>b)+c"};
  CorpusOptions o;
  o.n_pos = 30;
  o.n_neg = 30;
  auto rep = evaluate_corpus(lines, o);
  EXPECT_EQ(rep.duplicates, 1u);
  EXPECT_EQ(rep.parse_errors, 1u);
  EXPECT_EQ(rep.safe + rep.best_effort + rep.impossible, rep.total);
  EXPECT_EQ(rep.best_effort_dot + rep.best_effort_other, rep.best_effort);
  EXPECT_EQ(rep.safe_failures, 0u);
  std::size_t reasons = 0;
  for (const auto& [k, n] : rep.impossible_reasons) reasons += n;
  EXPECT_EQ(reasons, rep.impossible);
  EXPECT_GE(rep.impossible, 3u);
  auto j = to_json(rep);
  EXPECT_TRUE(j.contains("regexes"));
  EXPECT_FALSE(report_to_table(rep).empty());
}
