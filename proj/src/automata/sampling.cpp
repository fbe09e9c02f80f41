#include "rx2dpl/automata/sampling.hpp"

#include <algorithm>
#include <limits>

#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/matcher.hpp"

namespace rx2dpl::automata {

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling removes the modulo bias.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

double Rng::unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

std::vector<std::string> sample(const Dfa& a, std::size_t count, std::size_t max_len, std::uint64_t seed) {
  const Alphabet& alpha = a.alphabet();
  std::size_t n = a.state_count();
  std::size_t k = alpha.size();
  // ways[l][q]: number of accepted strings of exactly length l from q.
  std::vector<std::vector<long double>> ways(max_len + 1, std::vector<long double>(n, 0.0L));
  for (std::size_t q = 0; q < n; ++q) ways[0][q] = a.accepting(static_cast<int>(q)) ? 1.0L : 0.0L;
  for (std::size_t l = 1; l <= max_len; ++l)
    for (std::size_t q = 0; q < n; ++q) {
      long double w = 0;
      for (std::size_t c = 0; c < k; ++c)
        w += static_cast<long double>(alpha.cls(c).size()) * ways[l - 1][static_cast<std::size_t>(a.next(static_cast<int>(q), c))];
      ways[l][q] = w;
    }
  std::vector<std::size_t> lengths;
  for (std::size_t l = 0; l <= max_len; ++l)
    if (ways[l][static_cast<std::size_t>(a.start())] > 0) lengths.push_back(l);
  if (lengths.empty()) throw EmptyLanguage();

  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t len = lengths[rng.below(lengths.size())];
    std::string s;
    int q = a.start();
    for (std::size_t remaining = len; remaining > 0; --remaining) {
      long double total = ways[remaining][static_cast<std::size_t>(q)];
      long double r = static_cast<long double>(rng.unit()) * total;
      std::size_t pick = k;
      for (std::size_t c = 0; c < k; ++c) {
        long double w = static_cast<long double>(alpha.cls(c).size()) *
                        ways[remaining - 1][static_cast<std::size_t>(a.next(q, c))];
        if (w <= 0) continue;
        pick = c;
        if (r < w) break;
        r -= w;
      }
      // `pick` is the last viable class if rounding left r slightly too large.
      auto members = alpha.cls(pick).members();
      s += static_cast<char>(members[rng.below(members.size())]);
      q = a.next(q, pick);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

using regex::Node;
using regex::NodeKind;

class Walker {
 public:
  Walker(Rng& rng, std::size_t max_reps, const CharSet& universe) : rng_(rng), max_reps_(max_reps), universe_(universe) {}

  void walk(const Node& n, std::string& out) {
    switch (n.kind) {
      case NodeKind::literal:
        for (const auto& lc : n.literal) out += static_cast<char>(lc.value);
        break;
      case NodeKind::dot:
      case NodeKind::shorthand:
      case NodeKind::char_class: {
        CharSet s = regex::char_set_of(n);
        CharSet inside = s & universe_;
        auto members = (inside.empty() ? s : inside).members();
        if (!members.empty()) out += static_cast<char>(members[rng_.below(members.size())]);
        break;
      }
      case NodeKind::sequence:
        for (const auto& c : n.children) walk(c, out);
        break;
      case NodeKind::alternation: walk(n.children[rng_.below(n.children.size())], out); break;
      case NodeKind::group: walk(n.child(), out); break;
      case NodeKind::quantified: {
        const auto& q = n.quantifier;
        std::size_t hi = q.min + max_reps_;
        if (q.bounded()) hi = std::min(hi, q.max);
        std::size_t reps = rng_.between(q.min, hi);
        for (std::size_t i = 0; i < reps; ++i) walk(n.child(), out);
        break;
      }
      case NodeKind::anchor: break;
      case NodeKind::lookahead: {
        // Lookahead text is placed where the assertion sits, placed at the
        // end of the string, or dropped, depending on the attempt.
        std::string t;
        walk(n.child(), t);
        if (lookahead_mode == 0) out += t;
        else if (lookahead_mode == 1) tails_.push_back(std::move(t));
        break;
      }
    }
  }

  /// Walks the whole expression, then appends deferred lookahead text.
  std::string generate(const Node& root) {
    std::string s;
    tails_.clear();
    walk(root, s);
    for (const auto& t : tails_) s += t;
    return s;
  }

  int lookahead_mode = 0;

 private:
  std::vector<std::string> tails_;
  Rng& rng_;
  std::size_t max_reps_;
  CharSet universe_;
};

}  // namespace

std::vector<std::string> sample_positive(const regex::RegexAst& ast, std::size_t count, std::size_t max_reps,
                                         std::uint64_t seed, const PositiveOptions& opts) {
  Rng rng(seed);
  Walker walker(rng, max_reps, opts.universe);
  regex::ReferenceMatcher matcher(ast);
  regex::MatchOptions mo;
  mo.anchored = true;
  mo.step_budget = opts.step_budget;
  std::vector<std::string> out;
  std::size_t failed_slots = 0;
  for (std::size_t i = 0; i < count && failed_slots < opts.max_failed_slots; ++i) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < opts.attempts_per_sample; ++attempt) {
      walker.lookahead_mode = static_cast<int>(attempt % 3);
      std::string s = walker.generate(ast.root);
      bool ok = false;
      try {
        ok = matcher.match(s, mo).matched;
      } catch (const StepLimitExceeded&) {
        ok = false;
      }
      if (ok) {
        out.push_back(std::move(s));
        found = true;
        break;
      }
    }
    failed_slots = found ? 0 : failed_slots + 1;
  }
  return out;
}

}  // namespace rx2dpl::automata
