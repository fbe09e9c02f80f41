#include "rx2dpl/automata/compile.hpp"

#include <algorithm>
#include <map>

#include "rx2dpl/error.hpp"

namespace rx2dpl::automata {

using regex::Node;
using regex::NodeKind;

namespace {

enum class EdgeKind : std::uint8_t { eps, bol, eol, chars };

struct Edge {
  EdgeKind kind;
  int set;  // index into Nfa::sets when kind == chars
  int to;
};

struct Frag {
  int in;
  int out;
};

class Nfa {
 public:
  explicit Nfa(const CompileOptions& o) : opts_(o) {}

  std::vector<std::vector<Edge>> edges;
  std::vector<CharSet> sets;

  int state() {
    if (edges.size() >= opts_.max_nfa_states) throw Error("automaton size limit exceeded");
    edges.emplace_back();
    return static_cast<int>(edges.size() - 1);
  }
  void link(int from, EdgeKind k, int to, int set = -1) { edges[static_cast<std::size_t>(from)].push_back({k, set, to}); }

  int intern_set(const CharSet& s) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (sets[i] == s) return static_cast<int>(i);
    sets.push_back(s);
    return static_cast<int>(sets.size() - 1);
  }

  Frag chars(const CharSet& s) {
    int a = state(), b = state();
    link(a, EdgeKind::chars, b, intern_set(s & opts_.universe));
    return {a, b};
  }

  Frag epsilon() {
    int a = state(), b = state();
    link(a, EdgeKind::eps, b);
    return {a, b};
  }

  Frag build(const Node& n) {
    switch (n.kind) {
      case NodeKind::literal: {
        if (n.literal.empty()) return epsilon();
        Frag f = chars(CharSet::single(n.literal[0].value));
        for (std::size_t i = 1; i < n.literal.size(); ++i) {
          Frag g = chars(CharSet::single(n.literal[i].value));
          link(f.out, EdgeKind::eps, g.in);
          f.out = g.out;
        }
        return f;
      }
      case NodeKind::dot:
      case NodeKind::shorthand:
      case NodeKind::char_class: return chars(regex::char_set_of(n));
      case NodeKind::sequence: {
        if (n.children.empty()) return epsilon();
        Frag f = build(n.children[0]);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          Frag g = build(n.children[i]);
          link(f.out, EdgeKind::eps, g.in);
          f.out = g.out;
        }
        return f;
      }
      case NodeKind::alternation: {
        int a = state(), b = state();
        for (const auto& c : n.children) {
          Frag g = build(c);
          link(a, EdgeKind::eps, g.in);
          link(g.out, EdgeKind::eps, b);
        }
        return {a, b};
      }
      case NodeKind::group: return build(n.child());
      case NodeKind::quantified: return repeat(n);
      case NodeKind::anchor: {
        if (n.anchor == regex::AnchorKind::non_word_boundary) {
          if (!opts_.relax) throw NonRegularFeature("non-word boundary");
          return epsilon();
        }
        int a = state(), b = state();
        link(a, n.anchor == regex::AnchorKind::line_start ? EdgeKind::bol : EdgeKind::eol, b);
        return {a, b};
      }
      case NodeKind::lookahead: throw NonRegularFeature("lookahead");
    }
    return epsilon();
  }

 private:
  const CompileOptions& opts_;

  Frag repeat(const Node& n) {
    const regex::Quantifier& q = n.quantifier;
    if (q.mode == regex::QuantMode::possessive && !opts_.relax) throw NonRegularFeature("possessive quantifier");
    int a = state();
    int cur = a;
    for (std::size_t i = 0; i < q.min; ++i) {
      Frag g = build(n.child());
      link(cur, EdgeKind::eps, g.in);
      cur = g.out;
    }
    int b = state();
    if (!q.bounded()) {
      Frag g = build(n.child());
      link(cur, EdgeKind::eps, g.in);
      link(g.out, EdgeKind::eps, cur);
      link(cur, EdgeKind::eps, b);
      return {a, b};
    }
    for (std::size_t i = q.min; i < q.max; ++i) {
      Frag g = build(n.child());
      link(cur, EdgeKind::eps, g.in);
      link(cur, EdgeKind::eps, b);
      cur = g.out;
    }
    link(cur, EdgeKind::eps, b);
    return {a, b};
  }
};

std::vector<int> closure(const Nfa& nfa, std::vector<int> seed, bool allow_bol, bool allow_eol) {
  std::vector<bool> in(nfa.edges.size(), false);
  std::vector<int> stack;
  for (int s : seed)
    if (!in[static_cast<std::size_t>(s)]) {
      in[static_cast<std::size_t>(s)] = true;
      stack.push_back(s);
    }
  std::vector<int> out;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (const Edge& e : nfa.edges[static_cast<std::size_t>(s)]) {
      bool follow = e.kind == EdgeKind::eps || (e.kind == EdgeKind::bol && allow_bol) || (e.kind == EdgeKind::eol && allow_eol);
      if (follow && !in[static_cast<std::size_t>(e.to)]) {
        in[static_cast<std::size_t>(e.to)] = true;
        stack.push_back(e.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Node any_char_node() { return regex::make_class({}, true); }

Node any_string_node() {
  return regex::make_quantified(any_char_node(), {0, regex::kUnbounded, regex::QuantMode::greedy, regex::QuantForm::star});
}

Dfa compile(const Node& node, const CompileOptions& opts) {
  Nfa nfa(opts);
  Frag f = nfa.build(node);
  auto alphabet = Alphabet::build(opts.universe, nfa.sets);
  std::size_t k = alphabet->size();

  // Representative byte per class decides which NFA edges fire.
  std::vector<std::vector<bool>> fires(nfa.sets.size(), std::vector<bool>(k));
  for (std::size_t s = 0; s < nfa.sets.size(); ++s)
    for (std::size_t c = 0; c < k; ++c) fires[s][c] = nfa.sets[s].contains(alphabet->cls(c).first());

  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  std::vector<bool> initial;
  auto intern = [&](std::vector<int> set, bool is_initial) {
    // The initial subset is kept apart because `^` edges are open only there.
    std::vector<int> key = set;
    key.push_back(is_initial ? -1 : -2);
    auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(subsets.size()));
    if (fresh) {
      if (subsets.size() >= opts.max_dfa_states) throw Error("automaton size limit exceeded");
      subsets.push_back(std::move(set));
      initial.push_back(is_initial);
    }
    return it->second;
  };

  intern(closure(nfa, {f.in}, true, false), true);
  std::vector<int> trans;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<int> moved;
      for (int s : subsets[i])
        for (const Edge& e : nfa.edges[static_cast<std::size_t>(s)])
          if (e.kind == EdgeKind::chars && fires[static_cast<std::size_t>(e.set)][c]) moved.push_back(e.to);
      std::sort(moved.begin(), moved.end());
      moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
      trans.push_back(intern(closure(nfa, std::move(moved), false, false), false));
    }
  }

  Dfa dfa(alphabet, subsets.size(), 0);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    auto end_states = closure(nfa, subsets[i], initial[i], true);
    dfa.set_accepting(static_cast<int>(i), std::binary_search(end_states.begin(), end_states.end(), f.out));
    for (std::size_t c = 0; c < k; ++c) dfa.set_next(static_cast<int>(i), c, trans[i * k + c]);
  }
  return dfa;
}

Dfa compile(const regex::RegexAst& ast, const CompileOptions& opts) { return compile(ast.root, opts); }

}  // namespace rx2dpl::automata
