#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rx2dpl/automata/dfa.hpp"
#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::automata {

/// Seeded generator with draws that do not depend on the standard library's
/// distribution implementations, so samples are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform real in [0, 1).
  double unit();

 private:
  std::mt19937_64 gen_;
};

/// Draws `count` accepted strings of length at most `max_len`. A length is
/// drawn uniformly among the lengths that have accepted strings, then a
/// string uniformly among those of that length. Throws EmptyLanguage when no
/// string of length <= max_len is accepted.
std::vector<std::string> sample(const Dfa& a, std::size_t count, std::size_t max_len, std::uint64_t seed);

struct PositiveOptions {
  CharSet universe = default_universe();
  /// Attempts per requested sample before giving up on that slot.
  std::size_t attempts_per_sample = 50;
  /// Stop after this many slots in a row produced nothing.
  std::size_t max_failed_slots = 3;
  /// Reference matcher budget per candidate.
  std::size_t step_budget = 1'000'000;
};

/// Random walk over the expression. Unbounded repetition draws a count in
/// [min, min + max_reps]; bounded repetition in [min, min(max, min + max_reps)].
/// Every returned string is matched by the reference matcher anchored at 0.
/// May return fewer than `count` strings when the walk keeps producing
/// non-matching text (lookahead, misplaced anchors).
std::vector<std::string> sample_positive(const regex::RegexAst& ast, std::size_t count, std::size_t max_reps,
                                         std::uint64_t seed, const PositiveOptions& opts = {});

}  // namespace rx2dpl::automata
