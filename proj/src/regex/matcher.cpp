#include "rx2dpl/regex/matcher.hpp"

#include "rx2dpl/detail/function_ref.hpp"
#include "rx2dpl/error.hpp"

namespace rx2dpl::regex {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

using Cont = detail::FunctionRef<bool(std::size_t)>;

enum class Op : std::uint8_t { literal, set, sequence, alternation, group, repeat, bol, eol, nwb, lookahead };

struct PNode {
  Op op = Op::sequence;
  CharSet set;
  std::string lit;
  std::vector<int> kids;
  Quantifier q;
  int group = 0;
};

bool is_word_byte(unsigned char c) { return CharSet::word().contains(c); }

}  // namespace

struct ReferenceMatcher::Program {
  std::vector<PNode> nodes;
  int root = 0;
  int captures = 0;
  std::vector<std::pair<std::string, int>> names;

  int add(PNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size() - 1);
  }

  int compile(const Node& n) {
    PNode p;
    switch (n.kind) {
      case NodeKind::literal:
        if (n.literal.size() == 1) {
          p.op = Op::set;
          p.set = CharSet::single(n.literal.front().value);
        } else {
          p.op = Op::literal;
          for (const auto& lc : n.literal) p.lit += static_cast<char>(lc.value);
        }
        return add(std::move(p));
      case NodeKind::dot:
      case NodeKind::shorthand:
      case NodeKind::char_class:
        p.op = Op::set;
        p.set = char_set_of(n);
        return add(std::move(p));
      case NodeKind::sequence:
      case NodeKind::alternation: {
        p.op = n.kind == NodeKind::sequence ? Op::sequence : Op::alternation;
        std::vector<int> kids;
        for (const auto& c : n.children) kids.push_back(compile(c));
        p.kids = std::move(kids);
        return add(std::move(p));
      }
      case NodeKind::group: {
        if (n.group_kind == GroupKind::non_capturing) return compile(n.child());
        if (n.group_kind == GroupKind::named) names.emplace_back(n.name, n.capture_index);
        int body = compile(n.child());
        p.op = Op::group;
        p.group = n.capture_index;
        p.kids = {body};
        return add(std::move(p));
      }
      case NodeKind::quantified: {
        int body = compile(n.child());
        p.op = Op::repeat;
        p.q = n.quantifier;
        p.kids = {body};
        return add(std::move(p));
      }
      case NodeKind::anchor:
        p.op = n.anchor == AnchorKind::line_start ? Op::bol : n.anchor == AnchorKind::line_end ? Op::eol : Op::nwb;
        return add(std::move(p));
      case NodeKind::lookahead: {
        int body = compile(n.child());
        p.op = Op::lookahead;
        p.kids = {body};
        return add(std::move(p));
      }
    }
    return add(std::move(p));
  }
};

namespace {

class Run {
 public:
  Run(const ReferenceMatcher::Program& p, std::string_view in, std::size_t budget)
      : p_(p), in_(in), budget_(budget), caps_(static_cast<std::size_t>(p.captures) + 1, {npos, npos}) {}

  std::vector<std::pair<std::size_t, std::size_t>> caps_snapshot() const { return caps_; }
  std::size_t steps() const { return steps_; }
  std::vector<std::pair<std::size_t, std::size_t>>& caps() { return caps_; }

  bool m(int id, std::size_t pos, Cont k) {
    if (++steps_ > budget_) throw StepLimitExceeded(budget_);
    const PNode& n = p_.nodes[static_cast<std::size_t>(id)];
    switch (n.op) {
      case Op::set:
        if (pos < in_.size() && n.set.contains(static_cast<unsigned char>(in_[pos]))) return k(pos + 1);
        return false;
      case Op::literal:
        if (pos + n.lit.size() <= in_.size() && in_.compare(pos, n.lit.size(), n.lit) == 0) return k(pos + n.lit.size());
        return false;
      case Op::sequence: return seq(n, 0, pos, k);
      case Op::alternation:
        for (int b : n.kids)
          if (m(b, pos, k)) return true;
        return false;
      case Op::group: {
        auto& slot = caps_[static_cast<std::size_t>(n.group)];
        return m(n.kids[0], pos, [&](std::size_t e) {
          auto saved = slot;
          slot = {pos, e};
          if (k(e)) return true;
          slot = saved;
          return false;
        });
      }
      case Op::repeat:
        if (n.q.mode == QuantMode::possessive) return possessive(n, pos, k);
        return rep(n, n.q.mode == QuantMode::lazy, 0, pos, k);
      case Op::bol: return pos == 0 && k(pos);
      case Op::eol: return pos == in_.size() && k(pos);
      case Op::nwb: {
        bool before = pos > 0 && is_word_byte(static_cast<unsigned char>(in_[pos - 1]));
        bool after = pos < in_.size() && is_word_byte(static_cast<unsigned char>(in_[pos]));
        return before == after && k(pos);
      }
      case Op::lookahead: {
        auto saved = caps_;
        if (!m(n.kids[0], pos, [](std::size_t) { return true; })) {
          caps_ = std::move(saved);
          return false;
        }
        if (k(pos)) return true;
        caps_ = std::move(saved);
        return false;
      }
    }
    return false;
  }

 private:
  const ReferenceMatcher::Program& p_;
  std::string_view in_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> caps_;

  bool seq(const PNode& n, std::size_t i, std::size_t pos, Cont k) {
    if (i == n.kids.size()) return k(pos);
    return m(n.kids[i], pos, [&](std::size_t e) { return seq(n, i + 1, e, k); });
  }

  // An iteration that consumes nothing ends the loop (PCRE behaviour), which
  // keeps nullable bodies from looping forever.
  bool rep(const PNode& n, bool lazy, std::size_t count, std::size_t pos, Cont k) {
    const Quantifier& q = n.q;
    if (lazy) {
      if (count >= q.min && k(pos)) return true;
      if (count >= q.max) return false;
      return m(n.kids[0], pos, [&](std::size_t e) {
        if (e == pos) return count < q.min && k(e);
        return rep(n, lazy, count + 1, e, k);
      });
    }
    if (count < q.max) {
      bool ok = m(n.kids[0], pos, [&](std::size_t e) {
        if (e == pos) return k(e);
        return rep(n, lazy, count + 1, e, k);
      });
      if (ok) return true;
    }
    return count >= q.min && k(pos);
  }

  bool possessive(const PNode& n, std::size_t pos, Cont k) {
    auto saved = caps_;
    std::size_t end = npos;
    bool ok = rep(n, false, 0, pos, [&](std::size_t e) {
      end = e;
      return true;
    });
    if (ok && k(end)) return true;
    caps_ = std::move(saved);
    return false;
  }
};

}  // namespace

ReferenceMatcher::ReferenceMatcher(const RegexAst& ast) : prog_(std::make_unique<Program>()) {
  prog_->captures = ast.capture_count;
  prog_->root = prog_->compile(ast.root);
}

ReferenceMatcher::~ReferenceMatcher() = default;
ReferenceMatcher::ReferenceMatcher(ReferenceMatcher&&) noexcept = default;
ReferenceMatcher& ReferenceMatcher::operator=(ReferenceMatcher&&) noexcept = default;

int ReferenceMatcher::capture_count() const { return prog_->captures; }
const std::vector<std::pair<std::string, int>>& ReferenceMatcher::named_groups() const { return prog_->names; }

MatchResult ReferenceMatcher::match(std::string_view input, const MatchOptions& opts) const {
  MatchResult r;
  Run run(*prog_, input, opts.step_budget);
  std::size_t last = opts.anchored ? opts.start : input.size();
  for (std::size_t start = opts.start; start <= last && start <= input.size(); ++start) {
    std::size_t end = npos;
    bool ok = run.m(prog_->root, start, [&](std::size_t e) {
      if (opts.require_full && e != input.size()) return false;
      end = e;
      return true;
    });
    if (!ok) continue;
    r.matched = true;
    r.begin = start;
    r.end = end;
    auto& caps = run.caps();
    r.groups.resize(caps.size());
    r.groups[0] = std::make_pair(start, end);
    for (std::size_t g = 1; g < caps.size(); ++g)
      if (caps[g].first != npos) r.groups[g] = caps[g];
    for (const auto& [name, idx] : prog_->names) {
      const auto& span = r.groups[static_cast<std::size_t>(idx)];
      if (span) r.captures[name] = std::string(input.substr(span->first, span->second - span->first));
    }
    break;
  }
  r.steps = run.steps();
  return r;
}

MatchResult reference_match(const RegexAst& ast, std::string_view input, const MatchOptions& opts) {
  return ReferenceMatcher(ast).match(input, opts);
}

}  // namespace rx2dpl::regex
