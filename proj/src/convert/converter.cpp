#include "rx2dpl/convert/converter.hpp"

#include "rx2dpl/dpl/json.hpp"
#include "rx2dpl/error.hpp"
#include "rx2dpl/regex/normalize.hpp"
#include "rx2dpl/regex/parser.hpp"

namespace rx2dpl::convert {

using dpl::BuiltinKind;
using dpl::DplQuantifier;
using dpl::Fragment;
using regex::Node;
using regex::NodeKind;
using regex::QuantMode;
using Ranges = std::vector<std::pair<unsigned char, unsigned char>>;

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::safe: return "safe";
    case Classification::best_effort: return "best-effort";
    case Classification::impossible: return "impossible";
  }
  return "impossible";
}

namespace {

constexpr const char* kQuantifiedNamed = "quantified named capturing group";
constexpr const char* kNamedInRepeat = "named capturing group inside a repeated group";
constexpr const char* kUnanchoredReason = "unanchored source";

dpl::SourceSpan to_source(regex::Span s) { return {s.begin, s.end}; }

bool is_optional_group(const Node& q) {
  return q.child().kind == NodeKind::group && q.quantifier.mode == QuantMode::greedy && q.quantifier.min == 0 &&
         q.quantifier.max == 1;
}

void check_supported(const Node& n) {
  if (n.kind == NodeKind::anchor && n.anchor == regex::AnchorKind::non_word_boundary)
    throw UnsupportedFeature(n.span.begin, "non-word boundary");
  for (const auto& c : n.children) check_supported(c);
}

std::optional<std::string> impossible_reason(const Node& n, bool in_repeat) {
  if (n.kind == NodeKind::group && n.group_kind == regex::GroupKind::named && in_repeat) return kNamedInRepeat;
  if (n.kind == NodeKind::quantified) {
    const Node& c = n.child();
    if (c.kind == NodeKind::group && c.group_kind == regex::GroupKind::named) return kQuantifiedNamed;
    if (c.kind == NodeKind::group) return impossible_reason(c, in_repeat || !is_optional_group(n));
  }
  for (const auto& c : n.children)
    if (auto r = impossible_reason(c, in_repeat)) return r;
  return std::nullopt;
}

bool starts_with_bos(const Node& n) {
  switch (n.kind) {
    case NodeKind::anchor: return n.anchor == regex::AnchorKind::line_start;
    case NodeKind::sequence: return !n.children.empty() && starts_with_bos(n.children.front());
    case NodeKind::group: return starts_with_bos(n.child());
    case NodeKind::alternation:
      for (const auto& c : n.children)
        if (!starts_with_bos(c)) return false;
      return !n.children.empty();
    default: return false;
  }
}

void add_unique(Ranges& out, unsigned char lo, unsigned char hi) {
  for (auto r : out)
    if (r.first == lo && r.second == hi) return;
  out.emplace_back(lo, hi);
}

void add_set(Ranges& out, const CharSet& s) {
  for (auto [lo, hi] : s.ranges()) add_unique(out, lo, hi);
}

void add_shorthand(Ranges& out, regex::Shorthand s) {
  if (regex::is_negated(s)) {
    add_set(out, ~regex::shorthand_set(regex::negate(s)));
    return;
  }
  if (s == regex::Shorthand::word) {
    add_unique(out, 'a', 'z');
    add_unique(out, 'A', 'Z');
    add_unique(out, '0', '9');
    add_unique(out, '_', '_');
    return;
  }
  add_set(out, regex::shorthand_set(s));
}

Fragment placeholder(regex::Span span) {
  Fragment f = dpl::builtin(BuiltinKind::LD, DplQuantifier::exact(0));
  f.origin_span = to_source(span);
  return f;
}

std::optional<std::string> first_unsafe(const std::vector<Fragment>& frags);

std::optional<std::string> first_unsafe(const Fragment& f) {
  if (f.unsafe_reason) return f.unsafe_reason;
  if (auto r = first_unsafe(f.matcher.body)) return r;
  for (const auto& b : f.matcher.branches)
    if (auto r = first_unsafe(b)) return r;
  return std::nullopt;
}

std::optional<std::string> first_unsafe(const std::vector<Fragment>& frags) {
  for (const auto& f : frags)
    if (auto r = first_unsafe(f)) return r;
  return std::nullopt;
}

class Emitter {
 public:
  explicit Emitter(ConversionResult& r) : r_(r) {}

  std::vector<Fragment> body(const Node& n) {
    if (n.kind == NodeKind::alternation) return {alternation(n)};
    if (n.kind != NodeKind::sequence) return node(n);
    std::vector<Fragment> out;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path_.push_back({&n, i});
      for (auto& f : node(n.children[i])) out.push_back(std::move(f));
      path_.pop_back();
    }
    return out;
  }

  std::size_t wrapper_note = static_cast<std::size_t>(-1);

 private:
  ConversionResult& r_;
  std::vector<PathEntry> path_;

  std::vector<Fragment> nonempty(std::vector<Fragment> frags, regex::Span span) {
    if (frags.empty()) frags.push_back(placeholder(span));
    return frags;
  }

  std::vector<Fragment> node(const Node& n) {
    switch (n.kind) {
      case NodeKind::literal: return literal(n);
      case NodeKind::dot: return {single(n)};
      case NodeKind::shorthand: return {single(n)};
      case NodeKind::char_class: return {single(n)};
      case NodeKind::anchor: {
        Fragment f = dpl::builtin(n.anchor == regex::AnchorKind::line_start ? BuiltinKind::BOS : BuiltinKind::EOS);
        f.origin_span = to_source(n.span);
        return {f};
      }
      case NodeKind::group: return {group(n)};
      case NodeKind::lookahead: {
        path_.push_back({&n, 0});
        auto inner = nonempty(body(n.child()), n.span);
        path_.pop_back();
        Fragment f = dpl::lookahead(inner.size() == 1 ? inner.front() : dpl::group(std::move(inner)));
        f.origin_span = to_source(n.span);
        return {f};
      }
      case NodeKind::quantified: return quantified(n);
      case NodeKind::alternation: return {alternation(n)};
      case NodeKind::sequence: return body(n);
    }
    return {};
  }

  std::vector<Fragment> literal(const Node& n) {
    std::vector<Fragment> out;
    std::size_t pos = n.span.begin;
    std::string run;
    std::size_t run_begin = pos;
    auto flush = [&] {
      if (run.empty()) return;
      Fragment f = dpl::literal(run);
      f.origin_span = dpl::SourceSpan{run_begin, pos};
      out.push_back(std::move(f));
      run.clear();
    };
    for (const auto& c : n.literal) {
      if (c.value == '\n') {
        flush();
        Fragment f = dpl::builtin(BuiltinKind::LF);
        f.origin_span = dpl::SourceSpan{pos, pos + c.width};
        out.push_back(std::move(f));
        pos += c.width;
        run_begin = pos;
        continue;
      }
      if (run.empty()) run_begin = pos;
      run += static_cast<char>(c.value);
      pos += c.width;
    }
    flush();
    return out;
  }

  // Single-character nodes, unquantified form.
  Fragment single(const Node& n) {
    Fragment f;
    switch (n.kind) {
      case NodeKind::literal:
        f = n.literal.front().value == '\n' ? dpl::builtin(BuiltinKind::LF)
                                            : dpl::literal(std::string(1, static_cast<char>(n.literal.front().value)));
        break;
      case NodeKind::dot: f = dpl::builtin(BuiltinKind::LD, DplQuantifier::exact(1)); break;
      case NodeKind::shorthand:
        switch (n.shorthand) {
          case regex::Shorthand::digit: f = dpl::builtin(BuiltinKind::DIGIT, DplQuantifier::exact(1)); break;
          case regex::Shorthand::space: f = dpl::builtin(BuiltinKind::SPACE, DplQuantifier::exact(1)); break;
          case regex::Shorthand::word: f = dpl::builtin(BuiltinKind::WORD, DplQuantifier::exact(1)); break;
          case regex::Shorthand::non_space: f = dpl::builtin(BuiltinKind::NSPACE, DplQuantifier::exact(1)); break;
          case regex::Shorthand::non_digit:
          case regex::Shorthand::non_word: {
            Ranges r;
            add_shorthand(r, regex::negate(n.shorthand));
            f = dpl::char_class(std::move(r), true);
            break;
          }
        }
        break;
      case NodeKind::char_class:
        if (is_dot_like(n)) {
          f = dpl::builtin(BuiltinKind::DATA, DplQuantifier::exact(1));
        } else {
          Ranges r;
          for (const auto& it : n.items) {
            if (it.kind == regex::ClassItem::Kind::shorthand) add_shorthand(r, it.shorthand);
            else add_unique(r, it.lo, it.hi);
          }
          f = dpl::char_class(std::move(r), n.negated);
        }
        break;
      default: throw Error("not a single-character node");
    }
    f.origin_span = to_source(n.span);
    return f;
  }

  Fragment alternation(const Node& n) {
    std::vector<std::vector<Fragment>> branches;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path_.push_back({&n, i});
      branches.push_back(body(n.children[i]));
      path_.pop_back();
    }
    Fragment f = dpl::alternation(std::move(branches));
    f.origin_span = to_source(n.span);
    return f;
  }

  std::vector<Fragment> group_body(const Node& g) {
    path_.push_back({&g, 0});
    auto inner = nonempty(body(g.child()), g.span);
    path_.pop_back();
    return inner;
  }

  Fragment group(const Node& g) {
    auto inner = group_body(g);
    Fragment f;
    bool lone = inner.size() == 1;
    if (g.group_kind == regex::GroupKind::named) {
      f = lone && !inner.front().export_name ? std::move(inner.front()) : dpl::group(std::move(inner));
      f.export_name = dpl::make_export(g.name);
    } else if (lone && inner.front().matcher.kind == dpl::Matcher::Kind::alternation && !inner.front().quantifier &&
               !inner.front().export_name) {
      f = std::move(inner.front());
    } else {
      f = dpl::group(std::move(inner));
    }
    f.origin_span = to_source(g.span);
    return f;
  }

  static DplQuantifier written(const regex::Quantifier& q, bool default_one) {
    using F = regex::QuantForm;
    if (q.min == 0 && q.max == 1) {
      if (q.mode == QuantMode::greedy && default_one) return DplQuantifier::optional_marker();
      return DplQuantifier::range(0, 1);
    }
    switch (q.form) {
      case F::star: return DplQuantifier::star();
      case F::plus: return DplQuantifier::plus();
      case F::at_least: return DplQuantifier::at_least(q.min);
      default: break;
    }
    if (q.min == q.max) return DplQuantifier::exact(q.min);
    if (q.max == regex::kUnbounded) return DplQuantifier::at_least(q.min);
    return DplQuantifier::range(q.min, q.max);
  }

  std::vector<Fragment> quantified(const Node& q) {
    Continuation c = continuation_of(path_);
    Decision d = classify(q, c);
    QuantifierNote note;
    note.span = q.span;
    note.mode = q.quantifier.mode;
    note.strategy = d.strategy;
    note.emit = d.emit;
    note.dot = d.dot;
    note.unsafe_reason = d.unsafe_reason;
    if (q.span.begin == 0 && q.span.end == 0 && is_dot_like(q.child())) {
      wrapper_note = r_.quantifiers.size();
      if (note.unsafe_reason) note.unsafe_reason = kUnanchoredReason;
    }
    const std::size_t mine = r_.quantifiers.size();
    r_.quantifiers.push_back(note);
    if (d.query) r_.queries.push_back(*d.query);
    if (d.emit == Emit::omit) return {};

    const Node& u = q.child();
    Fragment f;
    path_.push_back({&q, 0});
    if (u.kind == NodeKind::group) {
      auto inner = group_body(u);
      if (is_optional_group(q) && d.emit == Emit::as_is) {
        bool bare_alt = inner.size() == 1 && inner.front().matcher.kind == dpl::Matcher::Kind::alternation &&
                        !inner.front().quantifier && !inner.front().export_name;
        f = bare_alt ? std::move(inner.front()) : dpl::group(std::move(inner));
        f.quantifier = DplQuantifier::optional_marker();
      } else {
        f = dpl::array(std::move(inner));
        f.quantifier = d.emit == Emit::to_min ? DplQuantifier::exact(q.quantifier.min) : written(q.quantifier, false);
      }
    } else {
      f = single(u);
      bool default_one = dpl::default_bounds(f.matcher) == std::pair<std::size_t, std::size_t>{1, 1};
      f.quantifier = d.emit == Emit::to_min ? DplQuantifier::exact(q.quantifier.min) : written(q.quantifier, default_one);
    }
    path_.pop_back();
    f.unsafe_reason = r_.quantifiers[mine].unsafe_reason;
    f.origin_span = to_source(q.span);
    return {f};
  }
};

Node with_wrapper(const Node& root) {
  regex::Quantifier lazy_star{0, regex::kUnbounded, QuantMode::lazy, regex::QuantForm::star};
  Node skip = regex::make_quantified(regex::make_class({}, true), lazy_star, {0, 0});
  std::vector<Node> elems{skip};
  if (root.kind == NodeKind::sequence) {
    for (const auto& c : root.children) elems.push_back(c);
  } else {
    elems.push_back(regex::make_group(regex::GroupKind::non_capturing, root, {}, root.span));
  }
  return regex::make_sequence(std::move(elems), root.span);
}

}  // namespace

regex::StrategyCounters ConversionResult::strategy_counters() const {
  regex::StrategyCounters out;
  for (const auto& q : quantifiers) {
    if (q.mode == QuantMode::possessive) continue;
    auto& m = q.mode == QuantMode::greedy ? out.greedy : out.lazy;
    m[q.strategy == Strategy::none ? "remaining" : strategy_tag(q.strategy)] += 1;
  }
  return out;
}

bool ConversionResult::unsafe_dot() const {
  for (const auto& q : quantifiers)
    if (q.dot && q.unsafe_reason) return true;
  return false;
}

ConversionResult convert(const regex::RegexAst& ast, const ConvertOptions& opts) {
  check_supported(ast.root);
  ConversionResult r;
  r.source = ast.source;
  if (auto reason = impossible_reason(ast.root, false)) {
    r.classification = Classification::impossible;
    r.impossible_reason = *reason;
    return r;
  }

  Node root = ast.root;
  if (opts.unanchored_wrapper && !starts_with_bos(root)) {
    root = with_wrapper(root);
    r.unanchored_wrapper = true;
    r.notes.emplace_back(kUnanchoredReason);
  }

  Emitter em(r);
  auto frags = em.body(root);
  if (frags.empty()) frags.push_back(placeholder(root.span));
  dpl::DplPattern pattern{std::move(frags)};

  for (std::size_t i = 0; i < pattern.fragments.size(); ++i) {
    const auto& f = pattern.fragments[i];
    FragmentNote fn;
    fn.fragment_index = i;
    fn.unsafe_reason = first_unsafe(f);
    bool first = true;
    for (std::size_t k = 0; k < r.quantifiers.size(); ++k) {
      auto& q = r.quantifiers[k];
      if (q.fragment_index || q.emit == Emit::omit || !f.origin_span) continue;
      bool inside = k == em.wrapper_note ? i == 0
                                         : q.span.begin >= f.origin_span->begin && q.span.end <= f.origin_span->end &&
                                               !(i == 0 && r.unanchored_wrapper);
      if (!inside) continue;
      q.fragment_index = i;
      if (first) fn.strategy = q.strategy;
      first = false;
    }
    r.fragment_notes.push_back(std::move(fn));
  }

  bool unsafe = false;
  for (const auto& n : r.fragment_notes) unsafe = unsafe || n.unsafe_reason.has_value();
  for (const auto& q : r.quantifiers) unsafe = unsafe || (q.emit != Emit::omit && q.unsafe_reason.has_value());
  r.classification = unsafe ? Classification::best_effort : Classification::safe;
  r.pattern = std::move(pattern);
  return r;
}

ConversionResult convert_regex(const std::string& source, const ConvertOptions& opts) {
  return convert(regex::normalize(regex::parse_regex(source)), opts);
}

nlohmann::json to_json(const ConversionResult& r) {
  using nlohmann::json;
  auto span_json = [](std::size_t b, std::size_t e) { return json{{"begin", b}, {"end", e}}; };
  json j;
  j["source"] = r.source;
  j["classification"] = classification_name(r.classification);
  j["impossible_reason"] = r.impossible_reason ? json(*r.impossible_reason) : json(nullptr);
  j["unanchored_wrapper"] = r.unanchored_wrapper;
  j["notes"] = r.notes;
  j["fragments"] = json::array();
  if (r.pattern) {
    auto [text, spans] = dpl::serialize_with_spans(*r.pattern);
    j["dpl"] = text;
    j["pattern"] = dpl::to_json(*r.pattern);
    for (const auto& n : r.fragment_notes) {
      const auto& f = r.pattern->fragments[n.fragment_index];
      json e;
      e["index"] = n.fragment_index;
      e["span"] = f.origin_span ? span_json(f.origin_span->begin, f.origin_span->end) : json(nullptr);
      e["dpl_span"] = span_json(spans[n.fragment_index].begin, spans[n.fragment_index].end);
      e["strategy"] = strategy_tag(n.strategy);
      e["unsafe_reason"] = n.unsafe_reason ? json(*n.unsafe_reason) : json(nullptr);
      j["fragments"].push_back(std::move(e));
    }
  } else {
    j["dpl"] = nullptr;
    j["pattern"] = nullptr;
  }
  j["quantifiers"] = json::array();
  for (const auto& q : r.quantifiers) {
    const char* mode = q.mode == QuantMode::greedy ? "greedy" : q.mode == QuantMode::lazy ? "lazy" : "possessive";
    const char* emit = q.emit == Emit::as_is ? "as-is" : q.emit == Emit::to_min ? "minimum" : "omitted";
    j["quantifiers"].push_back({{"span", span_json(q.span.begin, q.span.end)},
                                {"mode", mode},
                                {"strategy", strategy_tag(q.strategy)},
                                {"emit", emit},
                                {"dot", q.dot},
                                {"unsafe_reason", q.unsafe_reason ? json(*q.unsafe_reason) : json(nullptr)},
                                {"fragment", q.fragment_index ? json(*q.fragment_index) : json(nullptr)}});
  }
  j["queries"] = json::array();
  for (const auto& q : r.queries) {
    json v = json::array();
    for (auto s : q.v) v.push_back(span_json(s.begin, s.end));
    j["queries"].push_back({{"u", span_json(q.u.begin, q.u.end)},
                            {"v", v},
                            {"unit_verdict", q.unit_verdict},
                            {"repeated_verdict", q.repeated_verdict},
                            {"prefix_verdict", q.prefix_verdict},
                            {"verdict", q.verdict}});
  }
  return j;
}

}  // namespace rx2dpl::convert
