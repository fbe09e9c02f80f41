#include "rx2dpl/dpl/engine.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "rx2dpl/dpl/builtins.hpp"
#include "rx2dpl/error.hpp"

namespace rx2dpl::dpl {

namespace {

enum class Unit : std::uint8_t { literal, chars, lazy_chars, typed, bos, eos, group, alternation, lookahead, array };

struct Info {
  Unit unit = Unit::literal;
  CharSet set;
  std::size_t min = 1;
  std::size_t max = 1;
  bool optional = false;
};

struct Frame {
  enum class Kind : std::uint8_t { seq, export_close, accept, rep_next, end };
  Kind kind = Kind::end;
  const Frame* next = nullptr;
  // seq
  const std::vector<Fragment>* list = nullptr;
  std::size_t index = 0;
  // export_close, rep_next
  const Fragment* frag = nullptr;
  std::size_t begin = 0;
  // rep_next
  std::size_t count = 0;
  // accept, rep_next
  std::size_t* out = nullptr;
};

struct ExportRecord {
  const Fragment* frag;
  std::size_t begin;
  std::size_t end;
};

}  // namespace

struct DplEngine::Compiled {
  DplPattern pattern;
  std::unordered_map<const Fragment*, Info> info;

  void index(const std::vector<Fragment>& frags) {
    for (const auto& f : frags) {
      Info i;
      EffectiveBounds b = effective_bounds(f);
      i.min = b.min;
      i.max = b.max;
      i.optional = b.optional;
      const Matcher& m = f.matcher;
      switch (m.kind) {
        case Matcher::Kind::literal: i.unit = Unit::literal; break;
        case Matcher::Kind::char_class:
          i.unit = Unit::chars;
          i.set = m.char_set();
          break;
        case Matcher::Kind::builtin:
          if (m.builtin == BuiltinKind::LD || m.builtin == BuiltinKind::DATA) {
            i.unit = Unit::lazy_chars;
            i.set = builtin_char_set(m.builtin);
          } else if (is_char_builtin(m.builtin)) {
            i.unit = Unit::chars;
            i.set = builtin_char_set(m.builtin);
          } else if (m.builtin == BuiltinKind::BOS) {
            i.unit = Unit::bos;
          } else if (m.builtin == BuiltinKind::EOS) {
            i.unit = Unit::eos;
          } else {
            i.unit = Unit::typed;
          }
          break;
        case Matcher::Kind::group: i.unit = Unit::group; break;
        case Matcher::Kind::alternation: i.unit = Unit::alternation; break;
        case Matcher::Kind::lookahead: i.unit = Unit::lookahead; break;
        case Matcher::Kind::array: i.unit = Unit::array; break;
      }
      info.emplace(&f, i);
      index(m.body);
      for (const auto& br : m.branches) index(br);
    }
  }
};

namespace {

class Run {
 public:
  Run(const DplEngine::Compiled& c, std::string_view in, const EngineOptions& o) : c_(c), in_(in), opts_(o) {}

  bool start() {
    Frame end;
    end.kind = Frame::Kind::end;
    return seq(c_.pattern.fragments, 0, 0, &end);
  }

  std::size_t end_pos = 0;
  std::vector<ExportRecord> exports;
  std::size_t released = 0;
  std::size_t restores = 0;
  std::size_t steps = 0;

 private:
  const DplEngine::Compiled& c_;
  std::string_view in_;
  const EngineOptions& opts_;
  std::size_t high_water_ = 0;

  const Info& info(const Fragment& f) const { return c_.info.at(&f); }

  bool seq(const std::vector<Fragment>& list, std::size_t i, std::size_t pos, const Frame* k) {
    Frame fr;
    fr.kind = Frame::Kind::seq;
    fr.list = &list;
    fr.index = i;
    fr.next = k;
    return run(&fr, pos);
  }

  bool run(const Frame* k, std::size_t pos) {
    high_water_ = std::max(high_water_, pos);
    switch (k->kind) {
      case Frame::Kind::seq: {
        if (k->index >= k->list->size()) return run(k->next, pos);
        Frame nf = *k;
        nf.index = k->index + 1;
        return frag((*k->list)[k->index], pos, &nf);
      }
      case Frame::Kind::export_close: {
        exports.push_back({k->frag, k->begin, pos});
        if (run(k->next, pos)) return true;
        exports.pop_back();
        return false;
      }
      case Frame::Kind::accept: *k->out = pos; return true;
      case Frame::Kind::rep_next: {
        if (pos == k->begin) {
          // An iteration that consumed nothing ends the repetition.
          *k->out = pos;
          return true;
        }
        const Info& i = info(*k->frag);
        return rep_unit(*k->frag, i, k->count, pos, k->out);
      }
      case Frame::Kind::end:
        if (opts_.mode == MatchMode::full && pos != in_.size()) return false;
        end_pos = pos;
        return true;
    }
    return false;
  }

  void restore(std::size_t pos) {
    ++restores;
    if (high_water_ > pos) released += high_water_ - pos;
    high_water_ = pos;
  }

  bool frag(const Fragment& f, std::size_t pos, const Frame* k) {
    if (opts_.step_budget && ++steps > opts_.step_budget) throw StepLimitExceeded(opts_.step_budget);
    if (!opts_.step_budget) ++steps;
    const Info& i = info(f);
    if (i.optional) {
      std::size_t hw = high_water_;
      high_water_ = pos;
      std::size_t saved = exports.size();
      if (with_export(f, i, pos, k)) return true;
      exports.resize(saved);
      restore(pos);
      high_water_ = std::max(high_water_, hw);
      return run(k, pos);
    }
    return with_export(f, i, pos, k);
  }

  bool with_export(const Fragment& f, const Info& i, std::size_t pos, const Frame* k) {
    if (!f.export_name) return body(f, i, pos, k);
    Frame ex;
    ex.kind = Frame::Kind::export_close;
    ex.frag = &f;
    ex.begin = pos;
    ex.next = k;
    return body(f, i, pos, &ex);
  }

  // Matches one unit of a compound matcher (group, alternation, ARRAY body,
  // lookahead) with continuation k.
  bool unit(const Fragment& f, const Info& i, std::size_t pos, const Frame* k) {
    const Matcher& m = f.matcher;
    switch (i.unit) {
      case Unit::group:
      case Unit::array: return seq(m.body, 0, pos, k);
      case Unit::alternation: {
        std::size_t hw = high_water_;
        high_water_ = pos;
        std::size_t saved = exports.size();
        for (std::size_t b = 0; b < m.branches.size(); ++b) {
          if (seq(m.branches[b], 0, pos, k)) return true;
          exports.resize(saved);
          if (b + 1 < m.branches.size()) restore(pos);
        }
        high_water_ = std::max(high_water_, hw);
        return false;
      }
      case Unit::lookahead: {
        std::size_t saved = exports.size();
        std::size_t hw = high_water_;
        std::size_t end = 0;
        Frame acc;
        acc.kind = Frame::Kind::accept;
        acc.out = &end;
        bool ok = seq(m.body, 0, pos, &acc);
        high_water_ = hw;
        if (!ok) {
          exports.resize(saved);
          return false;
        }
        if (run(k, pos)) return true;
        exports.resize(saved);
        return false;
      }
      default: return false;
    }
  }

  bool rep_unit(const Fragment& f, const Info& i, std::size_t count, std::size_t pos, std::size_t* out) {
    if (count < i.max) {
      Frame rn;
      rn.kind = Frame::Kind::rep_next;
      rn.frag = &f;
      rn.count = count + 1;
      rn.begin = pos;
      rn.out = out;
      if (unit(f, i, pos, &rn)) return true;
    }
    if (count >= i.min) {
      *out = pos;
      return true;
    }
    return false;
  }

  std::optional<std::size_t> typed_at(const Fragment& f, std::size_t pos) const {
    return match_typed(f.matcher.builtin, in_, pos, f.matcher.format);
  }

  // Possessive repetition of simple units: the longest run within bounds.
  std::optional<std::size_t> simple_run(const Fragment& f, const Info& i, std::size_t pos) const {
    std::size_t count = 0;
    std::size_t p = pos;
    switch (i.unit) {
      case Unit::chars:
        while (count < i.max && p < in_.size() && i.set.contains(static_cast<unsigned char>(in_[p]))) ++p, ++count;
        break;
      case Unit::literal: {
        const std::string& t = f.matcher.text;
        if (t.empty()) return pos;
        while (count < i.max && p + t.size() <= in_.size() && in_.compare(p, t.size(), t) == 0) p += t.size(), ++count;
        break;
      }
      case Unit::typed:
        while (count < i.max) {
          auto e = typed_at(f, p);
          if (!e || *e == p) break;
          p = *e;
          ++count;
        }
        break;
      case Unit::bos:
      case Unit::eos: {
        bool holds = i.unit == Unit::bos ? p == 0 : p == in_.size();
        if (holds || i.min == 0) return pos;
        return std::nullopt;
      }
      default: return std::nullopt;
    }
    if (count < i.min) return std::nullopt;
    return p;
  }

  enum class Succ : std::uint8_t { none, fragment, end_of_input };

  std::pair<Succ, const Fragment*> successor(const Frame* k) const {
    for (; k; k = k->next) {
      switch (k->kind) {
        case Frame::Kind::seq:
          if (k->index < k->list->size()) return {Succ::fragment, &(*k->list)[k->index]};
          break;
        case Frame::Kind::export_close: break;
        case Frame::Kind::accept:
        case Frame::Kind::rep_next: return {Succ::none, nullptr};
        case Frame::Kind::end:
          return {opts_.mode == MatchMode::full ? Succ::end_of_input : Succ::none, nullptr};
      }
    }
    return {Succ::none, nullptr};
  }

  // Standalone attempt of `f` at `pos`; leaves no trace on exports or the
  // released-character accounting.
  bool probe(const Fragment& f, std::size_t pos) {
    std::size_t saved = exports.size();
    std::size_t hw = high_water_;
    std::size_t r = released, n = restores;
    std::size_t end = 0;
    Frame acc;
    acc.kind = Frame::Kind::accept;
    acc.out = &end;
    bool ok = frag(f, pos, &acc);
    exports.resize(saved);
    high_water_ = hw;
    released = r;
    restores = n;
    return ok;
  }

  bool lazy(const Info& i, std::size_t pos, const Frame* k) {
    auto [kind, next] = successor(k);
    std::size_t p = pos;
    std::size_t n = 0;
    while (n < i.min) {
      if (p >= in_.size() || !i.set.contains(static_cast<unsigned char>(in_[p]))) return false;
      ++p, ++n;
    }
    if (kind == Succ::none) return run(k, p);
    for (;;) {
      bool hit = kind == Succ::end_of_input ? p == in_.size() : probe(*next, p);
      if (hit) return run(k, p);
      if (n >= i.max || p >= in_.size() || !i.set.contains(static_cast<unsigned char>(in_[p]))) return false;
      ++p, ++n;
    }
  }

  bool body(const Fragment& f, const Info& i, std::size_t pos, const Frame* k) {
    switch (i.unit) {
      case Unit::lazy_chars: return lazy(i, pos, k);
      case Unit::literal:
        if (i.min == 1 && i.max == 1) {
          const std::string& t = f.matcher.text;
          if (pos + t.size() <= in_.size() && in_.compare(pos, t.size(), t) == 0) return run(k, pos + t.size());
          return false;
        }
        [[fallthrough]];
      case Unit::chars:
      case Unit::typed:
      case Unit::bos:
      case Unit::eos: {
        auto e = simple_run(f, i, pos);
        return e && run(k, *e);
      }
      case Unit::group:
      case Unit::alternation:
      case Unit::lookahead:
      case Unit::array: {
        if (i.min == 1 && i.max == 1 && i.unit != Unit::array) return unit(f, i, pos, k);
        std::size_t saved = exports.size();
        std::size_t end = 0;
        if (!rep_unit(f, i, 0, pos, &end)) {
          exports.resize(saved);
          return false;
        }
        if (run(k, end)) return true;
        exports.resize(saved);
        return false;
      }
    }
    return false;
  }
};

ExportValue make_export_value(const Fragment& f, std::string_view in, std::size_t b, std::size_t e) {
  ExportValue v;
  v.text = std::string(in.substr(b, e - b));
  v.begin = b;
  v.end = e;
  v.value = v.text;
  const Fragment* typed = nullptr;
  if (f.matcher.kind == Matcher::Kind::builtin && is_typed(f.matcher.builtin)) {
    typed = &f;
  } else if (f.matcher.kind == Matcher::Kind::group && f.matcher.body.size() == 1) {
    const Fragment& inner = f.matcher.body.front();
    if (inner.matcher.kind == Matcher::Kind::builtin && is_typed(inner.matcher.builtin)) typed = &inner;
  }
  if (typed) {
    if (auto tv = typed_value(typed->matcher.builtin, v.text, typed->matcher.format)) {
      v.type = builtin_name(typed->matcher.builtin);
      v.value = *tv;
    }
  }
  return v;
}

}  // namespace

DplEngine::DplEngine(DplPattern pattern) : c_(std::make_unique<Compiled>()) {
  c_->pattern = std::move(pattern);
  c_->index(c_->pattern.fragments);
}

DplEngine::~DplEngine() = default;
DplEngine::DplEngine(DplEngine&&) noexcept = default;
DplEngine& DplEngine::operator=(DplEngine&&) noexcept = default;

const DplPattern& DplEngine::pattern() const { return c_->pattern; }

DplMatchResult DplEngine::match(std::string_view input, const EngineOptions& opts) const {
  DplMatchResult r;
  Run run(*c_, input, opts);
  r.matched = run.start();
  r.released_chars = run.released;
  r.choice_restores = run.restores;
  r.steps = run.steps;
  if (!r.matched) return r;
  r.end = run.end_pos;
  for (const auto& rec : run.exports)
    r.exports[rec.frag->export_name->name] = make_export_value(*rec.frag, input, rec.begin, rec.end);
  return r;
}

DplMatchResult dpl_match(const DplPattern& p, std::string_view input, const EngineOptions& opts) {
  return DplEngine(p).match(input, opts);
}

nlohmann::json to_json(const DplMatchResult& r) {
  nlohmann::json ex = nlohmann::json::object();
  for (const auto& [name, v] : r.exports) ex[name] = {{"text", v.text}, {"type", v.type}, {"value", v.value}};
  return {{"matched", r.matched}, {"end", r.end}, {"exports", ex}};
}

}  // namespace rx2dpl::dpl
