#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"
#include "rx2dpl/convert/analysis.hpp"
#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/dpl/json.hpp"
#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"
#include "rx2dpl/validate/validator.hpp"

using namespace rx2dpl;
using namespace rx2dpl::convert;

namespace {

std::string dpl_text(const ConversionResult& r) { return r.pattern ? dpl::serialize(*r.pattern) : "<none>"; }

const QuantifierNote& only_quantifier(const ConversionResult& r) {
  EXPECT_EQ(r.quantifiers.size(), 1u) << r.source;
  return r.quantifiers.at(0);
}

Strategy strategy_of(const std::string& re, std::size_t index = 0) {
  return convert_regex(re).quantifiers.at(index).strategy;
}

}  // namespace

TEST(Converter, DirectMappings) {
  struct Row {
    const char* regex;
    const char* dpl;
  };
  for (const Row& r : {Row{"(?<name>abc)", "\"abc\":name"}, Row{"abc", "\"abc\""}, Row{"\\d", "DIGIT{1}"},
                       Row{"\\n", "LF"}, Row{".", "LD{1}"}, Row{"[abc]", "[abc]"}, Row{"\\s", "SPACE{1}"},
                       Row{"\\w", "WORD{1}"}, Row{"[^abc]", "[^abc]"}, Row{"(ab)c", "(\"ab\") \"c\""},
                       Row{"^", "BOS"}, Row{"a|bc", "(\"a\"|\"bc\")"}, Row{"(\\s\\w)*", "ARRAY{SPACE{1} WORD{1}}*"},
                       Row{"\\S", "NSPACE{1}"}, Row{"(?:abc)", "(\"abc\")"}, Row{"\\W", "[^a-zA-Z0-9_]"},
                       Row{"$", "EOS"}, Row{"(abc)?", "(\"abc\")?"}, Row{"\\D", "[^0-9]"},
                       Row{"(?=abc)", ">>\"abc\""}, Row{"[\\d\\w]", "[0-9a-zA-Z_]"}}) {
    auto res = convert_regex(r.regex);
    EXPECT_EQ(dpl_text(res), r.dpl) << r.regex;
    EXPECT_EQ(res.classification, Classification::safe) << r.regex;
  }
}

TEST(Converter, QuantifiedNamedGroupIsImpossible) {
  for (const char* re : {"(?<name>abc)*", "(?<a>b)+x", "(?:(?<n>a))+"}) {
    auto r = convert_regex(re);
    EXPECT_EQ(r.classification, Classification::impossible) << re;
    EXPECT_FALSE(r.pattern.has_value());
    ASSERT_TRUE(r.impossible_reason.has_value());
  }
  EXPECT_EQ(*convert_regex("(?<name>abc)*").impossible_reason, "quantified named capturing group");
  // Optional is not repetition.
  EXPECT_EQ(convert_regex("(?:(?<n>a))?b").classification, Classification::safe);
}

TEST(Converter, NonWordBoundaryUnsupported) {
  try {
    convert_regex("a\\Bb");
    ADD_FAILURE();
  } catch (const UnsupportedFeature& e) {
    EXPECT_EQ(e.feature(), "non-word boundary");
  }
}

TEST(Converter, GreedyStrategies) {
  EXPECT_EQ(strategy_of("x\\d{3}y"), Strategy::FGQ);
  EXPECT_EQ(strategy_of("method=[A-Z]*"), Strategy::LGQ);
  EXPECT_EQ(strategy_of("\\d{1,3}x"), Strategy::NGQ);
  EXPECT_EQ(strategy_of("\\w+\\s?[a-z]"), Strategy::none);
  EXPECT_EQ(strategy_of("\\w+[a-z]"), Strategy::none);
  EXPECT_EQ(strategy_of("a*(?:b|c)"), Strategy::NGQ);
  EXPECT_EQ(strategy_of("a*(?:b|ac)"), Strategy::none);
  // Optional successors are skipped until a required one.
  EXPECT_EQ(strategy_of("a+b?c?d"), Strategy::NGQ);
  EXPECT_EQ(strategy_of("a+b?c?a"), Strategy::none);
}

TEST(Converter, LazyStrategies) {
  auto nlq = convert_regex("\\d+?x$");
  EXPECT_EQ(only_quantifier(nlq).strategy, Strategy::NLQ);
  EXPECT_EQ(dpl_text(nlq), "DIGIT+ \"x\" EOS");

  auto slq = convert_regex(".+?abc");
  EXPECT_EQ(only_quantifier(slq).strategy, Strategy::SLQ);
  EXPECT_EQ(dpl_text(slq), "LD+ \"abc\"");

  auto llq = convert_regex("a{2,5}?");
  EXPECT_EQ(only_quantifier(llq).strategy, Strategy::LLQ);
  EXPECT_EQ(only_quantifier(llq).emit, Emit::to_min);
  EXPECT_EQ(dpl_text(llq), "\"a\"{2}");

  auto omit = convert_regex("x.*?");
  EXPECT_EQ(only_quantifier(omit).emit, Emit::omit);
  EXPECT_EQ(dpl_text(omit), "\"x\"");

  EXPECT_EQ(strategy_of("a{3}?b"), Strategy::FLQ);
  EXPECT_EQ(strategy_of("\\w+?[a-z]"), Strategy::none);
  EXPECT_EQ(strategy_of("\\d+?$"), Strategy::LLQ);
}

TEST(Converter, BestEffortReasons) {
  auto r = convert_regex("\\w+[a-z]");
  EXPECT_EQ(r.classification, Classification::best_effort);
  EXPECT_EQ(dpl_text(r), "WORD+ [a-z]");
  EXPECT_EQ(*only_quantifier(r).unsafe_reason, "quantified matcher intersects with its successor");
  ASSERT_TRUE(r.pattern->fragments[0].unsafe_reason.has_value());

  auto dot = convert_regex("\".+\" x");
  EXPECT_EQ(dot.classification, Classification::best_effort);
  EXPECT_TRUE(dot.unsafe_dot());
  EXPECT_EQ(*only_quantifier(dot).unsafe_reason, "quantified dot-matcher");
}

TEST(Converter, ClassificationMatchesFragmentReasons) {
  oracle::ContextGen gen(51);
  for (int i = 0; i < 400; ++i) {
    ConversionResult r;
    try {
      r = convert_regex(gen.next());
    } catch (const Error&) {
      continue;
    }
    if (!r.pattern) {
      EXPECT_EQ(r.classification, Classification::impossible);
      EXPECT_TRUE(r.impossible_reason.has_value());
      continue;
    }
    bool any_reason = false;
    for (const auto& n : r.fragment_notes) any_reason |= n.unsafe_reason.has_value();
    EXPECT_EQ(r.classification == Classification::safe, !any_reason) << r.source;
    EXPECT_FALSE(r.impossible_reason.has_value());
  }
}

TEST(Converter, DeterministicOutput) {
  oracle::ContextGen gen(52);
  for (int i = 0; i < 200; ++i) {
    auto src = gen.next();
    nlohmann::json a, b;
    try {
      a = to_json(convert_regex(src));
      b = to_json(convert_regex(src));
    } catch (const Error&) {
      continue;
    }
    EXPECT_EQ(a.dump(), b.dump()) << src;
  }
}

TEST(Converter, FixedWinsOverOtherStrategies) {
  // {2} at the end is both fixed and last; fixed is reported.
  EXPECT_EQ(strategy_of("a{2}"), Strategy::FGQ);
  EXPECT_EQ(strategy_of("a{2}?"), Strategy::FLQ);
  // Dot before a single literal at the end: SLQ before LLQ and NLQ.
  EXPECT_EQ(strategy_of(".+?x"), Strategy::SLQ);
}

TEST(Converter, ProvenanceCoversLeavesOnce) {
  oracle::ContextGen gen(53);
  for (int i = 0; i < 300; ++i) {
    regex::RegexAst ast;
    ConversionResult r;
    try {
      ast = regex::normalize(regex::parse_regex(gen.next()));
      r = convert::convert(ast);
    } catch (const Error&) {
      continue;
    }
    if (!r.pattern) continue;
    std::vector<dpl::SourceSpan> spans;
    for (const auto& f : r.pattern->fragments) {
      ASSERT_TRUE(f.origin_span.has_value()) << ast.source;
      spans.push_back(*f.origin_span);
    }
    for (std::size_t k = 1; k < spans.size(); ++k)
      EXPECT_LE(spans[k - 1].end, spans[k].begin) << ast.source << " fragment " << k;
    // Every leaf outside an omitted quantifier lies in exactly one span.
    std::vector<regex::Span> omitted;
    for (const auto& q : r.quantifiers)
      if (q.emit == Emit::omit) omitted.push_back(q.span);
    std::function<void(const regex::Node&)> visit = [&](const regex::Node& n) {
      for (const auto& o : omitted)
        if (n.span.begin >= o.begin && n.span.end <= o.end) return;
      bool leaf = n.children.empty() && n.kind != regex::NodeKind::sequence;
      if (leaf) {
        int holders = 0;
        for (const auto& s : spans) holders += s.begin <= n.span.begin && n.span.end <= s.end;
        EXPECT_EQ(holders, 1) << ast.source << " leaf at " << n.span.begin;
      }
      for (const auto& c : n.children) visit(c);
    };
    visit(ast.root);
  }
}

TEST(Converter, UnanchoredWrapper) {
  ConvertOptions o;
  o.unanchored_wrapper = true;
  auto r = convert_regex("abc", o);
  EXPECT_TRUE(r.unanchored_wrapper);
  EXPECT_EQ(dpl_text(r), "DATA* \"abc\"");
  EXPECT_EQ(r.classification, Classification::safe);
  auto anchored = convert_regex("^abc", o);
  EXPECT_FALSE(anchored.unanchored_wrapper);
  auto unsafe = convert_regex("\\w+x", o);
  EXPECT_EQ(unsafe.classification, Classification::best_effort);
}

TEST(Converter, WrappedSafeConversionsMatchUnanchoredSearch) {
  ConvertOptions o;
  o.unanchored_wrapper = true;
  auto inputs = oracle::all_strings("abc", 6);
  oracle::SingleQuantifierGen gen(54);
  int safe = 0;
  for (int i = 0; i < 300; ++i) {
    regex::RegexAst ast;
    ConversionResult r;
    try {
      ast = regex::normalize(regex::parse_regex(gen.next()));
      r = convert::convert(ast, o);
    } catch (const Error&) {
      continue;
    }
    if (r.classification != Classification::safe) continue;
    ++safe;
    for (const auto& s : inputs) {
      auto a = validate::regex_outcome(ast, s, !r.unanchored_wrapper, 1'000'000);
      auto b = validate::dpl_outcome(*r.pattern, s, 1'000'000);
      ASSERT_EQ(a.matched, b.matched) << ast.source << " => " << dpl_text(r) << " on " << s;
      if (a.matched) {
        ASSERT_EQ(a.end, b.end) << ast.source << " on " << s;
        ASSERT_EQ(a.captures, b.captures) << ast.source << " on " << s;
      }
    }
  }
  EXPECT_GT(safe, 20);
}

TEST(Converter, SafeMeansBruteForceAgreementWithNestedContext) {
  auto inputs = oracle::all_strings("abc", 6);
  oracle::ContextGen gen(55);
  int safe = 0;
  for (int i = 0; i < 600; ++i) {
    regex::RegexAst ast;
    ConversionResult r;
    try {
      ast = regex::normalize(regex::parse_regex(gen.next()));
      r = convert::convert(ast);
    } catch (const Error&) {
      continue;
    }
    if (r.classification != Classification::safe) continue;
    ++safe;
    for (const auto& s : inputs) {
      auto a = validate::regex_outcome(ast, s, true, 1'000'000);
      auto b = validate::dpl_outcome(*r.pattern, s, 1'000'000);
      ASSERT_TRUE(a == b) << ast.source << " => " << dpl_text(r) << " on '" << s << "' regex " << a.matched << "@"
                          << a.end << " dpl " << b.matched << "@" << b.end;
    }
  }
  EXPECT_GT(safe, 100);
}

TEST(Converter, QueriesRecordVerdicts) {
  auto r = convert_regex("\\d{1,3}x");
  ASSERT_EQ(r.queries.size(), 1u);
  EXPECT_FALSE(r.queries[0].verdict);
  auto w = convert_regex("\\w+[a-z]");
  ASSERT_FALSE(w.queries.empty());
  EXPECT_TRUE(w.queries[0].verdict);
}

TEST(Converter, JsonShape) {
  auto j = to_json(convert_regex("(?<addr>\\d{1,3}\\.\\d{1,3}\\.\\d{1,3}\\.\\d{1,3}).*\\s+(?<rc>\\d{3})"));
  EXPECT_EQ(oracle::check_conversion_json(j), "");
  EXPECT_GE(j["fragments"].size(), 4u);
  for (const auto& f : j["fragments"]) EXPECT_LE(f["span"]["begin"].get<int>(), f["span"]["end"].get<int>());
}
