#include "rx2dpl/convert/analysis.hpp"

#include "rx2dpl/automata/compile.hpp"
#include "rx2dpl/error.hpp"

namespace rx2dpl::convert {

using regex::Node;
using regex::NodeKind;
using regex::QuantMode;
using regex::Quantifier;

const char* strategy_tag(Strategy s) {
  switch (s) {
    case Strategy::FGQ: return "FGQ";
    case Strategy::LGQ: return "LGQ";
    case Strategy::NGQ: return "NGQ";
    case Strategy::FLQ: return "FLQ";
    case Strategy::NLQ: return "NLQ";
    case Strategy::LLQ: return "LLQ";
    case Strategy::SLQ: return "SLQ";
    case Strategy::direct: return "direct";
    case Strategy::none: return "none";
  }
  return "none";
}

namespace {

bool is_optional_group(const Node& q) {
  const Quantifier& Q = q.quantifier;
  return q.child().kind == NodeKind::group && Q.mode == QuantMode::greedy && Q.min == 0 && Q.max == 1;
}

automata::CompileOptions analysis_options() {
  automata::CompileOptions o;
  o.universe = CharSet::all();
  o.relax = true;
  return o;
}

// A top-level lookahead ends the list: `(?=X)R` is approximated from above
// by X followed by anything.
Node sequence_of(const std::vector<Piece>& pieces, std::size_t count, bool open_end) {
  std::vector<Node> elems;
  for (std::size_t i = 0; i < count && i < pieces.size(); ++i) {
    if (pieces[i].node.kind == NodeKind::lookahead) {
      elems.push_back(pieces[i].node.child());
      open_end = true;
      break;
    }
    elems.push_back(pieces[i].node);
  }
  if (open_end) elems.push_back(automata::any_string_node());
  return regex::make_sequence(std::move(elems));
}

Node with_open_end(const Node& n) { return regex::make_sequence({n, automata::any_string_node()}); }

Node set_node(const CharSet& s) {
  std::vector<regex::ClassItem> items;
  for (auto [lo, hi] : s.ranges()) items.push_back({regex::ClassItem::Kind::range, lo, hi, regex::Shorthand::digit});
  return regex::make_class(std::move(items), false);
}

bool languages_intersect(const Node& a, const Node& b) {
  auto opts = analysis_options();
  return automata::intersects(automata::compile(a, opts), automata::compile(b, opts));
}

bool is_line_end(const Node& n) { return n.kind == NodeKind::anchor && n.anchor == regex::AnchorKind::line_end; }

bool has_newline(const Node& lit) {
  for (const auto& c : lit.literal)
    if (c.value == '\n') return true;
  return false;
}

// The node becomes exactly one top-level fragment, so a preceding LD sees it
// as its successor.
bool single_fragment(const Node& n) {
  switch (n.kind) {
    case NodeKind::literal: return !has_newline(n) || n.literal.size() == 1;
    case NodeKind::anchor:
    case NodeKind::sequence: return false;
    case NodeKind::quantified: return !(n.quantifier.mode == QuantMode::lazy && n.quantifier.min == 0);
    default: return true;
  }
}

}  // namespace

Continuation continuation_of(const std::vector<PathEntry>& path) {
  Continuation c;
  bool beyond = false;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const Node& p = *it->node;
    switch (p.kind) {
      case NodeKind::sequence:
        for (std::size_t j = it->child + 1; j < p.children.size(); ++j)
          c.pieces.push_back({p.children[j], false, nullable(p.children[j]), beyond});
        break;
      case NodeKind::quantified: {
        if (!is_optional_group(p)) beyond = true;
        if (p.quantifier.max > 1) {
          Quantifier star{0, regex::kUnbounded, QuantMode::greedy, regex::QuantForm::star};
          bool more_optional = p.quantifier.min <= 1 || nullable(p.child());
          c.pieces.push_back({regex::make_quantified(p.child(), star), true, more_optional, beyond});
        }
        break;
      }
      case NodeKind::lookahead:
        // A lookahead body ends in an unconditional accept.
        c.inside_lookahead = true;
        return c;
      default: break;
    }
  }
  return c;
}

bool nullable(const Node& n) {
  switch (n.kind) {
    case NodeKind::literal: return n.literal.empty();
    case NodeKind::dot:
    case NodeKind::shorthand:
    case NodeKind::char_class: return false;
    case NodeKind::anchor:
    case NodeKind::lookahead: return true;
    case NodeKind::group: return nullable(n.child());
    case NodeKind::sequence:
      for (const auto& c : n.children)
        if (!nullable(c)) return false;
      return true;
    case NodeKind::alternation:
      for (const auto& c : n.children)
        if (nullable(c)) return true;
      return false;
    case NodeKind::quantified: return n.quantifier.min == 0 || nullable(n.child());
  }
  return false;
}

bool has_assertion(const Node& n) {
  if (n.kind == NodeKind::anchor || n.kind == NodeKind::lookahead) return true;
  for (const auto& c : n.children)
    if (has_assertion(c)) return true;
  return false;
}

CharSet first_chars(const Node& n) {
  switch (n.kind) {
    case NodeKind::literal: return n.literal.empty() ? CharSet{} : CharSet::single(n.literal.front().value);
    case NodeKind::dot:
    case NodeKind::shorthand:
    case NodeKind::char_class: return regex::char_set_of(n);
    case NodeKind::anchor:
    case NodeKind::lookahead: return {};
    case NodeKind::group: return first_chars(n.child());
    case NodeKind::sequence: {
      CharSet s;
      for (const auto& c : n.children) {
        s |= first_chars(c);
        if (!nullable(c)) break;
      }
      return s;
    }
    case NodeKind::alternation: {
      CharSet s;
      for (const auto& c : n.children) s |= first_chars(c);
      return s;
    }
    case NodeKind::quantified: return n.quantifier.max == 0 ? CharSet{} : first_chars(n.child());
  }
  return {};
}

bool deterministic(const Node& n) {
  switch (n.kind) {
    case NodeKind::literal:
    case NodeKind::dot:
    case NodeKind::shorthand:
    case NodeKind::char_class:
    case NodeKind::anchor: return true;
    case NodeKind::lookahead: return false;
    case NodeKind::group: return deterministic(n.child());
    case NodeKind::sequence:
      for (const auto& c : n.children)
        if (!deterministic(c)) return false;
      return true;
    case NodeKind::alternation: {
      CharSet seen;
      for (const auto& c : n.children) {
        if (!deterministic(c) || nullable(c)) return false;
        CharSet f = first_chars(c);
        if (seen.intersects(f)) return false;
        seen |= f;
      }
      return true;
    }
    case NodeKind::quantified:
      if (n.quantifier.mode == QuantMode::possessive) return true;
      return n.quantifier.fixed() && deterministic(n.child());
  }
  return false;
}

bool is_dot_like(const Node& n) {
  if (n.kind == NodeKind::dot) return true;
  return n.kind == NodeKind::char_class && n.negated && n.items.empty();
}

bool always_succeeds(const Continuation& c) {
  for (const auto& p : c.pieces)
    if (!p.nullable || has_assertion(p.node)) return false;
  return true;
}

IntersectionQuery successor_query(const Node& quantified, const Continuation& c) {
  IntersectionQuery q;
  q.u = quantified.span;
  std::size_t count = c.pieces.size();
  for (std::size_t i = 0; i < c.pieces.size(); ++i) {
    if (!c.pieces[i].nullable) {
      count = i + 1;
      break;
    }
  }
  for (std::size_t i = 0; i < count; ++i) q.v.push_back(c.pieces[i].node.span);
  const Node& unit = quantified.child();
  try {
    Node succ = sequence_of(c.pieces, count, false);
    q.unit_verdict = languages_intersect(unit, succ);
    Quantifier upto3{1, 3, QuantMode::greedy, regex::QuantForm::range};
    q.repeated_verdict = languages_intersect(regex::make_quantified(unit, upto3), succ);
    q.prefix_verdict = languages_intersect(with_open_end(unit), sequence_of(c.pieces, count, true));
  } catch (const Error&) {
    // Not expressible as a finite automaton within limits: assume overlap.
    q.unit_verdict = q.repeated_verdict = q.prefix_verdict = true;
  }
  q.verdict = q.unit_verdict || q.repeated_verdict || q.prefix_verdict;
  return q;
}

bool successor_blocks(const CharSet& set, const Continuation& c) {
  if (c.pieces.empty()) return false;
  const Piece& f = c.pieces.front();
  if (f.beyond_array || f.iteration) return false;
  try {
    return !languages_intersect(with_open_end(set_node(set)), sequence_of(c.pieces, 1, true));
  } catch (const Error&) {
    return false;
  }
}

namespace {

constexpr const char* kDotReason = "quantified dot-matcher";
constexpr const char* kIntersectReason = "quantified matcher intersects with its successor";
constexpr const char* kAmbiguousReason = "quantified matcher has an ambiguous repetition unit";

Decision hit(Strategy s, Emit e = Emit::as_is) {
  Decision d;
  d.strategy = s;
  d.emit = e;
  return d;
}

Decision miss(const char* reason) {
  Decision d;
  d.unsafe_reason = reason;
  return d;
}

Emit min_rewrite(const Node& q) { return q.quantifier.min == 0 ? Emit::omit : Emit::to_min; }

bool slq_applies(const Continuation& c) {
  if (c.pieces.empty()) return false;
  const Piece& f = c.pieces.front();
  if (f.iteration || f.beyond_array || !single_fragment(f.node)) return false;
  for (std::size_t i = 1; i < c.pieces.size(); ++i)
    if (!c.pieces[i].nullable || has_assertion(c.pieces[i].node)) return false;
  return true;
}

bool before_line_end(const Continuation& c) { return !c.pieces.empty() && is_line_end(c.pieces.front().node); }

}  // namespace

Decision classify_greedy(const Node& q, const Continuation& c) {
  const Node& u = q.child();
  const Quantifier& Q = q.quantifier;
  Decision d;
  if (is_dot_like(u)) {
    if (Q.fixed()) d = hit(Strategy::FGQ);
    else if (successor_blocks(regex::char_set_of(u), c)) d = hit(Strategy::NGQ);
    else d = miss(kDotReason);
    d.dot = true;
    return d;
  }
  if (Q.fixed() && deterministic(u)) return hit(Strategy::FGQ);
  if (always_succeeds(c)) return hit(Strategy::LGQ);
  if (!deterministic(u)) return miss(kAmbiguousReason);
  auto query = successor_query(q, c);
  d = query.verdict ? miss(kIntersectReason) : hit(Strategy::NGQ);
  d.query = query;
  return d;
}

Decision classify_lazy(const Node& q, const Continuation& c) {
  const Node& u = q.child();
  const Quantifier& Q = q.quantifier;
  Decision d;
  if (is_dot_like(u)) {
    if (Q.fixed()) d = hit(Strategy::FLQ);
    else if (slq_applies(c)) d = hit(Strategy::SLQ);
    else if (always_succeeds(c)) d = hit(Strategy::LLQ, min_rewrite(q));
    else if (before_line_end(c) && !c.pieces.front().beyond_array) d = hit(Strategy::LLQ);
    else if (successor_blocks(regex::char_set_of(u), c)) d = hit(Strategy::NLQ);
    else d = miss(kDotReason);
    d.dot = true;
    return d;
  }
  bool det = deterministic(u);
  if (Q.fixed() && det) return hit(Strategy::FLQ);
  if (always_succeeds(c)) return hit(Strategy::LLQ, min_rewrite(q));
  if (before_line_end(c) && det) return hit(Strategy::LLQ);
  if (!det) return miss(kAmbiguousReason);
  auto query = successor_query(q, c);
  d = query.verdict ? miss(kIntersectReason) : hit(Strategy::NLQ);
  d.query = query;
  return d;
}

Decision classify(const Node& q, const Continuation& c) {
  switch (q.quantifier.mode) {
    case QuantMode::greedy: return classify_greedy(q, c);
    case QuantMode::lazy: return classify_lazy(q, c);
    case QuantMode::possessive: break;
  }
  const Node& u = q.child();
  if (!is_dot_like(u)) return hit(Strategy::direct);
  Decision d = (q.quantifier.fixed() || successor_blocks(regex::char_set_of(u), c)) ? hit(Strategy::direct) : miss(kDotReason);
  d.dot = true;
  return d;
}

}  // namespace rx2dpl::convert
