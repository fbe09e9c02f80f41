#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rx2dpl/convert/converter.hpp"
#include "rx2dpl/dpl/builtins.hpp"
#include "rx2dpl/dpl/engine.hpp"
#include "rx2dpl/dpl/json.hpp"
#include "rx2dpl/dpl/pattern.hpp"
#include "rx2dpl/dpl/syntax.hpp"
#include "rx2dpl/error.hpp"

using namespace rx2dpl;
using namespace rx2dpl::dpl;

namespace {

DplMatchResult run(const std::string& pattern, const std::string& input, MatchMode mode = MatchMode::prefix) {
  EngineOptions o;
  o.mode = mode;
  return dpl_match(parse_dpl(pattern), input, o);
}

}  // namespace

TEST(DplSyntax, MultiLetterLiteralIsOneMatcher) {
  auto p = parse_dpl("\"abc\"");
  ASSERT_EQ(p.fragments.size(), 1u);
  EXPECT_EQ(p.fragments[0].matcher.kind, Matcher::Kind::literal);
  EXPECT_EQ(p.fragments[0].matcher.text, "abc");
}

TEST(DplSyntax, ParsesMatchers) {
  auto p = parse_dpl("DIGIT{1} (\"a\"|\"bc\") [^a-z]+:x ARRAY{SPACE{1} WORD{1}}* >>\"q\" TIMESTAMP('yyyy-MM-dd'):t");
  ASSERT_EQ(p.fragments.size(), 6u);
  EXPECT_EQ(p.fragments[0].matcher.builtin, BuiltinKind::DIGIT);
  EXPECT_EQ(*p.fragments[0].quantifier, DplQuantifier::exact(1));
  EXPECT_EQ(p.fragments[1].matcher.kind, Matcher::Kind::alternation);
  EXPECT_EQ(p.fragments[2].export_name->name, "x");
  EXPECT_TRUE(p.fragments[2].matcher.negated);
  EXPECT_EQ(p.fragments[3].matcher.kind, Matcher::Kind::array);
  EXPECT_EQ(p.fragments[4].matcher.kind, Matcher::Kind::lookahead);
  EXPECT_EQ(p.fragments[5].matcher.format, "yyyy-MM-dd");
}

TEST(DplSyntax, CanonicalRoundTrip) {
  for (const char* text :
       {"\"abc\":name", "ARRAY{SPACE{1} WORD{1}}*", "LD+ \"abc\"", "\"a\"{2}", "[^0-9] [^a-zA-Z0-9_] NSPACE{1}",
        "[0-9a-zA-Z_]", "IPv4:addr LD SPACE+ INT:rc", "(\"abc\")?", ">>\"abc\"", "BOS \"a\" EOS", "LF LD{0,4}",
        "(\"a\"|\"bc\"):x DATA*", "TIMESTAMP('yyyy-MM-dd HH:mm:ss'):ts LONG DOUBLE IPADDR"}) {
    auto p = parse_dpl(text);
    EXPECT_EQ(serialize(p), text);
    EXPECT_EQ(parse_dpl(serialize(p)), p) << text;
  }
}

TEST(DplSyntax, SerializeParseIdentityOnConvertedPatterns) {
  oracle::ContextGen gen(31);
  for (int i = 0; i < 300; ++i) {
    convert::ConversionResult r;
    try {
      r = convert::convert_regex(gen.next());
    } catch (const Error&) {
      continue;
    }
    if (!r.pattern) continue;
    auto text = serialize(*r.pattern);
    auto back = parse_dpl(text);
    EXPECT_TRUE(same_shape(back, *r.pattern)) << text;
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(DplSyntax, Diagnostics) {
  auto diags = validate_syntax(parse_dpl("INT:a INT:a"));
  ASSERT_FALSE(diags.empty());
  EXPECT_EQ(diags[0].code, "duplicate-export");
  EXPECT_TRUE(validate_syntax(parse_dpl("INT:a LONG:b")).empty());
  EXPECT_THROW(parse_dpl("\"abc"), DplSyntaxError);
  EXPECT_THROW(parse_dpl("UNKNOWNMATCHER"), DplSyntaxError);
}

TEST(DplSyntax, EmptyPatternHasNoText) { EXPECT_THROW(serialize(DplPattern{}), EmptyPattern); }

TEST(DplJson, RoundTrip) {
  auto p = parse_dpl("\"GET \" NSPACE+:path (\"a\"|\"bc\")? ARRAY{DIGIT{2}}{1,3} INT:rc");
  auto j = to_json(p);
  EXPECT_TRUE(oracle::check_pattern_json(j, "pattern").empty());
  EXPECT_EQ(pattern_from_json(j), p);
}

TEST(DplEngine, PossessiveRunStopsAtInputMismatch) {
  auto r = run("\"method=\" [A-Z]*", "method=POST, endpoint=https://...");
  ASSERT_TRUE(r.matched);
  EXPECT_EQ(r.end, 11u);
}

TEST(DplEngine, NoReleaseOfConsumedDigits) {
  EXPECT_FALSE(run("DIGIT{1,3} \"x\"", "789").matched);
  EXPECT_FALSE(run("DIGIT* [0-9]", "345").matched);
}

TEST(DplEngine, LazyDotStopsAtSuccessor) {
  auto r = run("LD+ \"!\"", "Hello! Zillertal!");
  ASSERT_TRUE(r.matched);
  EXPECT_EQ(r.end, 6u);
}

TEST(DplEngine, LdCommitsToFirstSuccessorMatch) {
  // LD stops before the first x; "y" then fails on 'z' and LD never grows.
  EXPECT_FALSE(run("LD \"x\" \"y\"", "axzxy").matched);
  EXPECT_TRUE(run("LD \"xy\"", "axzxy").matched);
}

TEST(DplEngine, ExportsAndTypedValues) {
  auto r = run("IPADDR:ip \" \" INT:rc \" \" DOUBLE:d", "10.1.2.3 -42 2.5", MatchMode::full);
  ASSERT_TRUE(r.matched);
  EXPECT_EQ(r.exports.at("ip").text, "10.1.2.3");
  EXPECT_EQ(r.exports.at("rc").value, -42);
  EXPECT_EQ(r.exports.at("rc").type, "INT");
  EXPECT_DOUBLE_EQ(r.exports.at("d").value.get<double>(), 2.5);
}

TEST(DplEngine, AlternativesRestartAndCountReleases) {
  auto r = run("(\"ab\" \"x\"|\"a\")", "abz");
  ASSERT_TRUE(r.matched);
  EXPECT_EQ(r.end, 1u);
  EXPECT_GT(r.choice_restores, 0u);
}

TEST(DplEngine, ReleasesOnlyInsideChoiceRestarts) {
  oracle::ContextGen gen(41);
  auto inputs = oracle::all_strings("abc", 5);
  for (int i = 0; i < 150; ++i) {
    convert::ConversionResult conv;
    try {
      conv = convert::convert_regex(gen.next());
    } catch (const Error&) {
      continue;
    }
    if (!conv.pattern) continue;
    DplEngine engine(*conv.pattern);
    for (const auto& s : inputs) {
      auto r = engine.match(s);
      if (r.released_chars > 0) {
        EXPECT_GT(r.choice_restores, 0u) << serialize(*conv.pattern) << " on " << s;
      }
    }
  }
}

TEST(DplEngine, AnchoredAtStart) {
  // A first fragment that cannot match at 0 fails whatever follows.
  for (const char* p : {"\"abc\"", "DIGIT+", "[x-z]", "INT", "IPADDR"}) {
    for (const char* s : {"-abc", "_123 abc", "_xyz", " 1", ".1.2.3.4"}) {
      EXPECT_FALSE(run(p, s).matched) << p << " on " << s;
    }
  }
}

TEST(DplEngine, FullAndPrefixModes) {
  EXPECT_TRUE(run("\"ab\"", "abc").matched);
  EXPECT_FALSE(run("\"ab\"", "abc", MatchMode::full).matched);
  EXPECT_TRUE(run("\"ab\" EOS", "ab").matched);
  EXPECT_FALSE(run("\"ab\" EOS", "abc").matched);
}

TEST(DplEngine, StepBudget) {
  EngineOptions o;
  o.step_budget = 5;
  EXPECT_THROW(dpl_match(parse_dpl("(\"a\"|\"b\")* \"c\""), std::string(100, 'a'), o), StepLimitExceeded);
}

TEST(Builtins, IntegerRanges) {
  EXPECT_TRUE(builtin_accepts(BuiltinKind::INT, "2147483647"));
  EXPECT_FALSE(builtin_accepts(BuiltinKind::INT, "2147483648"));
  EXPECT_TRUE(builtin_accepts(BuiltinKind::INT, "-2147483648"));
  EXPECT_TRUE(builtin_accepts(BuiltinKind::LONG, "9000000000"));
  EXPECT_FALSE(builtin_accepts(BuiltinKind::LONG, "9223372036854775808"));
  EXPECT_FALSE(builtin_accepts(BuiltinKind::INT, "12a"));
}

TEST(Builtins, Addresses) {
  EXPECT_TRUE(is_ipv4("192.168.0.1"));
  EXPECT_FALSE(is_ipv4("256.1.1.1"));
  EXPECT_FALSE(is_ipv4("1.2.3"));
  EXPECT_TRUE(is_ipv6("::1"));
  EXPECT_TRUE(is_ipv6("2001:db8::ff00:42:8329"));
  EXPECT_FALSE(is_ipv6("2001:db8::ff00::1"));
  EXPECT_TRUE(builtin_accepts(BuiltinKind::IPADDR, "fe80::e8e2"));
  EXPECT_TRUE(builtin_accepts(BuiltinKind::IPADDR, "8.8.8.8"));
}

TEST(Builtins, DoubleAndTimestamp) {
  for (const char* s : {"3.14", "-2.75", "12", "1e3", "0.001"}) EXPECT_TRUE(builtin_accepts(BuiltinKind::DOUBLE, s)) << s;
  EXPECT_FALSE(builtin_accepts(BuiltinKind::DOUBLE, "1.2.3"));
  EXPECT_TRUE(builtin_accepts(BuiltinKind::TIMESTAMP, "2024-01-31 12:34:56"));
  EXPECT_FALSE(builtin_accepts(BuiltinKind::TIMESTAMP, "2024-13-31 12:34:56"));
  auto v = typed_value(BuiltinKind::TIMESTAMP, "1970-01-01 00:01:00");
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, 60);
}
