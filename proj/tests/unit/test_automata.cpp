#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rx2dpl/automata/compile.hpp"
#include "rx2dpl/automata/dfa.hpp"
#include "rx2dpl/automata/sampling.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/matcher.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"

using namespace rx2dpl;
using namespace rx2dpl::automata;

namespace {

regex::RegexAst ast_of(const std::string& s) { return regex::normalize(regex::parse_regex(s)); }

bool full_match(const regex::RegexAst& ast, const std::string& s) {
  regex::MatchOptions o;
  o.anchored = true;
  o.require_full = true;
  return regex::reference_match(ast, s, o).matched;
}

CharSet abc() { return CharSet::range('a', 'c'); }

/// Random complete automaton over {a,b,c}.
Dfa random_dfa(Rng& rng, std::size_t states) {
  auto alpha = Alphabet::build(abc(), {CharSet::single('a'), CharSet::single('b'), CharSet::single('c')});
  Dfa d(alpha, states, 0);
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t c = 0; c < alpha->size(); ++c) d.set_next(static_cast<int>(s), c, static_cast<int>(rng.below(states)));
    d.set_accepting(static_cast<int>(s), rng.below(2) == 0);
  }
  return d;
}

}  // namespace

TEST(Alphabet, PartitionRefinesSets) {
  auto a = Alphabet::build(default_universe(), {CharSet::range('a', 'z'), CharSet::digit()});
  EXPECT_EQ(a->size(), 3u);
  EXPECT_EQ(a->class_of('a'), a->class_of('q'));
  EXPECT_NE(a->class_of('a'), a->class_of('5'));
  EXPECT_EQ(a->class_of(0x01), -1);
}

TEST(Compile, FullStringLanguage) {
  auto d = compile(ast_of("a(b|cd)*e?"));
  for (const char* s : {"a", "ab", "acd", "abcdb", "ae", "abe"}) EXPECT_TRUE(d.accepts(s)) << s;
  for (const char* s : {"", "b", "ac", "aee", "abx"}) EXPECT_FALSE(d.accepts(s)) << s;
}

TEST(Compile, AnchorsAndLookahead) {
  EXPECT_TRUE(compile(ast_of("^ab$")).accepts("ab"));
  EXPECT_TRUE(compile(ast_of("a^b")).empty_language());
  EXPECT_THROW(compile(ast_of("a(?=b)")), NonRegularFeature);
}

TEST(Compile, PossessiveNeedsRelax) {
  EXPECT_THROW(compile(ast_of("a++")), NonRegularFeature);
  CompileOptions o;
  o.relax = true;
  EXPECT_TRUE(compile(ast_of("a++"), o).accepts("aaa"));
}

TEST(Sampling, SamplesAreAcceptedAndMatched) {
  oracle::ContextGen gen(21);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    regex::RegexAst ast;
    Dfa d = compile(ast_of("a"));
    try {
      ast = ast_of(gen.next());
      d = compile(ast);
    } catch (const Error&) {
      continue;
    }
    if (d.empty_language()) continue;
    for (const auto& s : sample(d, 10, 12, static_cast<std::uint64_t>(i))) {
      EXPECT_TRUE(full_match(ast, s)) << ast.source << " on " << s;
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Sampling, ComplementSamplesAreRejected) {
  oracle::ContextGen gen(22);
  for (int i = 0; i < 200; ++i) {
    regex::RegexAst ast;
    Dfa d = compile(ast_of("a"));
    try {
      ast = ast_of(gen.next());
      d = compile(ast);
    } catch (const Error&) {
      continue;
    }
    for (const auto& s : sample(complement(d), 10, 10, static_cast<std::uint64_t>(i)))
      EXPECT_FALSE(full_match(ast, s)) << ast.source << " on " << s;
  }
}

TEST(Sampling, DeterministicForSeed) {
  auto d = compile(ast_of("[a-c]+x?"));
  EXPECT_EQ(sample(d, 20, 8, 99), sample(d, 20, 8, 99));
  EXPECT_THROW(sample(compile(ast_of("a^b")), 1, 5, 1), EmptyLanguage);
}

TEST(Complement, MembershipIsExclusive) {
  auto d = compile(ast_of("(ab|c)*d?"));
  auto nd = complement(d);
  Rng rng(4);
  const std::string letters = "abcd";
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    for (auto n = rng.below(8); n > 0; --n) s.push_back(letters[rng.below(letters.size())]);
    EXPECT_NE(d.accepts(s), nd.accepts(s)) << s;
  }
}

TEST(Intersects, AgreesWithBruteForce) {
  // With at most 3 x 2 product states the shortest common string, if any,
  // has length below 6, so enumeration up to 6 decides the question.
  Rng rng(8);
  auto strings = oracle::all_strings("abc", 6);
  for (int i = 0; i < 300; ++i) {
    Dfa a = random_dfa(rng, 1 + rng.below(3));
    Dfa b = random_dfa(rng, 1 + rng.below(2));
    bool brute = false;
    for (const auto& s : strings)
      if (a.accepts(s) && b.accepts(s)) {
        brute = true;
        break;
      }
    EXPECT_EQ(intersects(a, b), brute) << "pair " << i;
  }
}

TEST(Intersects, DifferentAlphabets) {
  auto a = compile(ast_of("\\d+"));
  auto b = compile(ast_of("[5-9a-z]"));
  auto c = compile(ast_of("x"));
  EXPECT_TRUE(intersects(a, b));
  EXPECT_FALSE(intersects(a, c));
}

TEST(Dfa, ShortestAccepted) {
  auto d = compile(ast_of("aa+b|c{3}"));
  auto s = d.shortest_accepted();
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->size(), 3u);
  EXPECT_FALSE(compile(ast_of("a^")).shortest_accepted().has_value());
}
