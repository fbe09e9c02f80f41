#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rx2dpl/automata/sampling.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/census.hpp"
#include "rx2dpl/regex/matcher.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"

using namespace rx2dpl;
using namespace rx2dpl::regex;

namespace {

struct SpanCase {
  const char* regex;
  const char* input;
  bool matched;
  std::size_t begin, end;
};

MatchResult search(const std::string& re, const std::string& in) {
  return reference_match(normalize(parse_regex(re)), in);
}

}  // namespace

TEST(Parser, NamedGroupHoldsLiteral) {
  auto ast = parse_regex("(?<name>abc)");
  ASSERT_EQ(ast.root.kind, NodeKind::sequence);
  ASSERT_EQ(ast.root.children.size(), 1u);
  const Node& g = ast.root.children[0];
  EXPECT_EQ(g.kind, NodeKind::group);
  EXPECT_EQ(g.group_kind, GroupKind::named);
  EXPECT_EQ(g.name, "name");
  ASSERT_EQ(g.child().children.size(), 1u);
  const Node& lit = g.child().children[0];
  EXPECT_EQ(lit.kind, NodeKind::literal);
  EXPECT_EQ(lit.literal.size(), 3u);
  EXPECT_EQ(ast.capture_count, 1);
}

TEST(Parser, QuantifierForms) {
  struct Q {
    const char* re;
    std::size_t min, max;
    QuantMode mode;
  };
  for (const Q& q : {Q{"a?", 0, 1, QuantMode::greedy}, Q{"a*?", 0, kUnbounded, QuantMode::lazy},
                     Q{"a++", 1, kUnbounded, QuantMode::possessive}, Q{"a{3}", 3, 3, QuantMode::greedy},
                     Q{"a{2,5}?", 2, 5, QuantMode::lazy}, Q{"a{2,}", 2, kUnbounded, QuantMode::greedy}}) {
    auto ast = parse_regex(q.re);
    const Node& n = ast.root.children.at(0);
    ASSERT_EQ(n.kind, NodeKind::quantified) << q.re;
    EXPECT_EQ(n.quantifier.min, q.min) << q.re;
    EXPECT_EQ(n.quantifier.max, q.max) << q.re;
    EXPECT_EQ(n.quantifier.mode, q.mode) << q.re;
  }
}

TEST(Parser, CharacterRepresentationsDecode) {
  auto ast = parse_regex("\\n\\t\\r\\f\\0\\x41");
  const Node& lit = ast.root.children.at(0);
  ASSERT_EQ(lit.kind, NodeKind::literal);
  std::string decoded;
  for (auto c : lit.literal) decoded.push_back(static_cast<char>(c.value));
  EXPECT_EQ(decoded, std::string("\n\t\r\f\0A", 6));
  for (auto c : lit.literal) EXPECT_EQ(c.form, LiteralForm::representation);
}

TEST(Parser, SyntaxErrorsCarryPosition) {
  struct E {
    const char* re;
    std::size_t pos;
  };
  for (const E& e : {E{"(ab", 0}, E{"a)", 1}, E{"[abc", 0}, E{"*a", 0}}) {
    try {
      parse_regex(e.re);
      ADD_FAILURE() << e.re << " parsed";
    } catch (const SyntaxError& err) {
      EXPECT_EQ(err.position(), e.pos) << e.re << ": " << err.what();
    }
  }
}

TEST(Parser, UnsupportedFeaturesAreNamed) {
  for (const char* re : {"(a)\\1", "(?<=a)b", "(?i)abc", "(?!a)"}) {
    try {
      parse_regex(re);
      ADD_FAILURE() << re << " parsed";
    } catch (const UnsupportedFeature& e) {
      EXPECT_FALSE(e.feature().empty()) << re;
    }
  }
}

TEST(Parser, RoundTripProperty) {
  oracle::ContextGen gen(11);
  for (int i = 0; i < 500; ++i) {
    auto src = gen.next();
    RegexAst a;
    try {
      a = parse_regex(src);
    } catch (const SyntaxError&) {
      continue;
    }
    auto b = parse_regex(to_regex(a));
    EXPECT_TRUE(structurally_equal(a, b)) << src << " -> " << to_regex(a);
  }
  for (const char* src : {"(?<name>abc)", "[\\d\\w]", "[^a-z_]+?", "(\\s\\w)*", "a{2,5}?", "\\x41\\n.", "^a|b$",
                          "(?:ab)?(?=c)", "[\\]\\-a]", "\\.\\*\\+"}) {
    auto a = parse_regex(src);
    EXPECT_TRUE(structurally_equal(a, parse_regex(to_regex(a)))) << src;
  }
}

TEST(Normalize, SingleElementClasses) {
  EXPECT_EQ(to_regex(normalize(parse_regex("[x]"))), "x");
  EXPECT_EQ(to_regex(normalize(parse_regex("[\\d]"))), "\\d");
  EXPECT_EQ(to_regex(normalize(parse_regex("[^\\d]"))), "\\D");
  EXPECT_EQ(to_regex(normalize(parse_regex("a[b]c"))), "abc");
  EXPECT_EQ(to_regex(normalize(parse_regex("[ab]"))), "[ab]");
}

TEST(Normalize, Idempotent) {
  oracle::ContextGen gen(3);
  for (int i = 0; i < 300; ++i) {
    RegexAst a;
    try {
      a = normalize(parse_regex(gen.next()));
    } catch (const SyntaxError&) {
      continue;
    }
    EXPECT_TRUE(structurally_equal(normalize(a), a)) << a.source;
  }
}

TEST(Census, AlternationCountsPipes) {
  auto c = census(normalize(parse_regex("(a|bc|d)")));
  EXPECT_EQ(c.total(Feature::alternative), 2u);
  EXPECT_EQ(c.total(Feature::capturing_group), 1u);
}

TEST(Census, CountsAfterNormalization) {
  auto raw = parse_regex("[x][\\d]a");
  auto c = census(normalize(raw));
  EXPECT_EQ(c.total(Feature::char_class), 0u);
  EXPECT_EQ(c.total(Feature::digit), 1u);
  auto q = census(normalize(parse_regex("(?<n>a)*(\\s\\w)+(abc)?.*?\\B")));
  EXPECT_EQ(q.total(Feature::quantified_named_group), 1u);
  EXPECT_EQ(q.total(Feature::quantified_group), 1u);
  EXPECT_EQ(q.total(Feature::optional_group), 1u);
  EXPECT_EQ(q.total(Feature::lazy_quantifier), 1u);
  EXPECT_EQ(q.total(Feature::non_word_boundary), 1u);
}

TEST(Census, CorpusDeduplicatesAndReportsParseErrors) {
  auto cc = census_corpus({"a+", "a+", "# comment", "", "(", "\\d"});
  EXPECT_EQ(cc.duplicates, 1u);
  EXPECT_EQ(cc.analyzed, 2u);
  ASSERT_EQ(cc.diagnostics.size(), 1u);
  EXPECT_EQ(cc.diagnostics[0].line, 5u);
  EXPECT_EQ(census_to_table(cc), census_to_table(census_corpus({"a+", "a+", "# comment", "", "(", "\\d"})));
}

TEST(Matcher, WorkedExamples) {
  const std::string text = "My \"room\", my rules. Your \"room\", your rules!";
  for (const SpanCase& c : {SpanCase{"\".+\"", text.c_str(), true, 3, 32}, SpanCase{"\".+?\"", text.c_str(), true, 3, 9},
                            SpanCase{"^[a-z]++:", "rules: 1) ... 2) ...", true, 0, 6},
                            SpanCase{"\\d*+[0-9]", "room number 345", false, 0, 0},
                            SpanCase{"method=[A-Z]*", "method=POST, endpoint=https://...", true, 0, 11},
                            SpanCase{"\\d{1,3}x", "789", false, 0, 0},
                            SpanCase{"\\w+[a-z]", "Hello-Muehlviertel!", true, 0, 5},
                            SpanCase{"\\w+\\s?[a-z]", "Hello-Muehlviertel!", true, 0, 5},
                            SpanCase{"\\d+?x$", "78xx", false, 0, 0},
                            SpanCase{"\\w+?[a-z]", "Hello-Lavanttal!", true, 0, 2},
                            SpanCase{".+?!", "Hello! Zillertal!", true, 0, 6}}) {
    auto r = search(c.regex, c.input);
    EXPECT_EQ(r.matched, c.matched) << c.regex;
    if (c.matched && r.matched) {
      EXPECT_EQ(r.begin, c.begin) << c.regex;
      EXPECT_EQ(r.end, c.end) << c.regex;
    }
  }
}

TEST(Matcher, NamedCaptures) {
  auto r = search("(?<addr>\\d{1,3}\\.\\d{1,3}\\.\\d{1,3}\\.\\d{1,3}).*\\s+(?<rc>\\d{3})",
                  "10.0.0.1 - - \"GET / HTTP/1.1\" 200");
  ASSERT_TRUE(r.matched);
  EXPECT_EQ(r.captures.at("addr"), "10.0.0.1");
  EXPECT_EQ(r.captures.at("rc"), "200");
}

TEST(Matcher, LookaheadDoesNotConsume) {
  auto r = search("a(?=b)", "ab");
  ASSERT_TRUE(r.matched);
  EXPECT_EQ(r.end, 1u);
  EXPECT_FALSE(search("a(?=b)", "ac").matched);
}

TEST(Matcher, LineEndOnlyAtInputEnd) {
  EXPECT_FALSE(reference_match_at_start(parse_regex("a$"), "a\n").matched);
  EXPECT_TRUE(reference_match_at_start(parse_regex("a$"), "a").matched);
}

TEST(Matcher, StepBudget) {
  MatchOptions o;
  o.step_budget = 1000;
  EXPECT_THROW(reference_match(parse_regex("(a|a)*b"), std::string(30, 'a'), o), StepLimitExceeded);
}

TEST(Matcher, SampledPositivesMatchFromStart) {
  oracle::ContextGen gen(5);
  for (int i = 0; i < 200; ++i) {
    RegexAst ast;
    try {
      ast = normalize(parse_regex(gen.next()));
    } catch (const SyntaxError&) {
      continue;
    }
    for (const auto& s : automata::sample_positive(ast, 20, 4, static_cast<std::uint64_t>(i))) {
      EXPECT_TRUE(reference_match_at_start(ast, s).matched) << ast.source << " on " << s;
    }
  }
}
