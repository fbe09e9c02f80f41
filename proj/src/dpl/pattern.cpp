#include "rx2dpl/dpl/pattern.hpp"

#include <cctype>
#include <cstdio>

#include "rx2dpl/error.hpp"

namespace rx2dpl::dpl {

const char* builtin_name(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::LD: return "LD";
    case BuiltinKind::DATA: return "DATA";
    case BuiltinKind::DIGIT: return "DIGIT";
    case BuiltinKind::SPACE: return "SPACE";
    case BuiltinKind::NSPACE: return "NSPACE";
    case BuiltinKind::WORD: return "WORD";
    case BuiltinKind::LF: return "LF";
    case BuiltinKind::BOS: return "BOS";
    case BuiltinKind::EOS: return "EOS";
    case BuiltinKind::IPADDR: return "IPADDR";
    case BuiltinKind::IPV4: return "IPv4";
    case BuiltinKind::INT: return "INT";
    case BuiltinKind::LONG: return "LONG";
    case BuiltinKind::DOUBLE: return "DOUBLE";
    case BuiltinKind::TIMESTAMP: return "TIMESTAMP";
  }
  return "?";
}

std::optional<BuiltinKind> builtin_from_name(const std::string& name) {
  static const std::pair<const char*, BuiltinKind> table[] = {
      {"LD", BuiltinKind::LD},         {"DATA", BuiltinKind::DATA},     {"DIGIT", BuiltinKind::DIGIT},
      {"SPACE", BuiltinKind::SPACE},   {"NSPACE", BuiltinKind::NSPACE}, {"WORD", BuiltinKind::WORD},
      {"LF", BuiltinKind::LF},         {"BOS", BuiltinKind::BOS},       {"EOS", BuiltinKind::EOS},
      {"IPADDR", BuiltinKind::IPADDR}, {"IPv4", BuiltinKind::IPV4},     {"IPV4", BuiltinKind::IPV4},
      {"INT", BuiltinKind::INT},       {"LONG", BuiltinKind::LONG},     {"DOUBLE", BuiltinKind::DOUBLE},
      {"TIMESTAMP", BuiltinKind::TIMESTAMP},
  };
  for (const auto& [n, k] : table)
    if (name == n) return k;
  return std::nullopt;
}

bool is_typed(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::IPADDR:
    case BuiltinKind::IPV4:
    case BuiltinKind::INT:
    case BuiltinKind::LONG:
    case BuiltinKind::DOUBLE:
    case BuiltinKind::TIMESTAMP: return true;
    default: return false;
  }
}

std::string quantifier_text(const DplQuantifier& q) {
  switch (q.form) {
    case DplQuantifier::Form::optional: return "?";
    case DplQuantifier::Form::star: return "*";
    case DplQuantifier::Form::plus: return "+";
    case DplQuantifier::Form::exact: return "{" + std::to_string(q.min) + "}";
    case DplQuantifier::Form::range: return "{" + std::to_string(q.min) + "," + std::to_string(q.max) + "}";
    case DplQuantifier::Form::at_least: return "{" + std::to_string(q.min) + ",}";
    case DplQuantifier::Form::at_most: return "{," + std::to_string(q.max) + "}";
  }
  return {};
}

bool is_plain_export_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

ExportName make_export(const std::string& name) { return {name, !is_plain_export_name(name)}; }

CharSet Matcher::char_set() const {
  CharSet s;
  for (auto [lo, hi] : ranges) s.add_range(lo, hi);
  return negated ? ~s : s;
}

bool Matcher::operator==(const Matcher& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::literal: return text == o.text;
    case Kind::builtin: return builtin == o.builtin && format == o.format;
    case Kind::char_class: return ranges == o.ranges && negated == o.negated;
    case Kind::group:
    case Kind::lookahead:
    case Kind::array: return body == o.body;
    case Kind::alternation: return branches == o.branches;
  }
  return false;
}

bool Fragment::same_shape(const Fragment& o) const {
  if (quantifier != o.quantifier || export_name != o.export_name) return false;
  const Matcher& a = matcher;
  const Matcher& b = o.matcher;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Matcher::Kind::group:
    case Matcher::Kind::lookahead:
    case Matcher::Kind::array: return dpl::same_shape(a.body, b.body);
    case Matcher::Kind::alternation:
      if (a.branches.size() != b.branches.size()) return false;
      for (std::size_t i = 0; i < a.branches.size(); ++i)
        if (!dpl::same_shape(a.branches[i], b.branches[i])) return false;
      return true;
    default: return a == b;
  }
}

bool same_shape(const std::vector<Fragment>& a, const std::vector<Fragment>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_shape(b[i])) return false;
  return true;
}

bool same_shape(const DplPattern& a, const DplPattern& b) { return same_shape(a.fragments, b.fragments); }

Fragment literal(std::string text) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::literal;
  f.matcher.text = std::move(text);
  return f;
}

Fragment builtin(BuiltinKind k, std::optional<DplQuantifier> q) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::builtin;
  f.matcher.builtin = k;
  f.quantifier = q;
  return f;
}

Fragment timestamp(std::string format) {
  Fragment f = builtin(BuiltinKind::TIMESTAMP);
  f.matcher.format = std::move(format);
  return f;
}

Fragment char_class(std::vector<std::pair<unsigned char, unsigned char>> ranges, bool negated) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::char_class;
  f.matcher.ranges = std::move(ranges);
  f.matcher.negated = negated;
  return f;
}

Fragment group(std::vector<Fragment> body) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::group;
  f.matcher.body = std::move(body);
  return f;
}

Fragment alternation(std::vector<std::vector<Fragment>> branches) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::alternation;
  f.matcher.branches = std::move(branches);
  return f;
}

Fragment lookahead(Fragment body) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::lookahead;
  f.matcher.body.push_back(std::move(body));
  return f;
}

Fragment array(std::vector<Fragment> body, std::optional<DplQuantifier> q) {
  Fragment f;
  f.matcher.kind = Matcher::Kind::array;
  f.matcher.body = std::move(body);
  f.quantifier = q;
  return f;
}

std::pair<std::size_t, std::size_t> default_bounds(const Matcher& m) {
  if (m.kind != Matcher::Kind::builtin) return {1, 1};
  switch (m.builtin) {
    case BuiltinKind::DIGIT:
    case BuiltinKind::SPACE:
    case BuiltinKind::NSPACE:
    case BuiltinKind::WORD: return {1, 4096};
    case BuiltinKind::LD:
    case BuiltinKind::DATA: return {0, 4096};
    default: return {1, 1};
  }
}

EffectiveBounds effective_bounds(const Fragment& f) {
  auto [lo, hi] = default_bounds(f.matcher);
  if (!f.quantifier) return {lo, hi, false};
  if (f.quantifier->form == DplQuantifier::Form::optional) return {lo, hi, true};
  return {f.quantifier->min, f.quantifier->max, false};
}

namespace {

std::string quote_literal(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string class_char(unsigned char c) {
  if (c == ']' || c == '\\' || c == '^' || c == '-' || c == '[') return std::string("\\") + static_cast<char>(c);
  if (c < 0x20 || c >= 0x7F) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02X", c);
    return buf;
  }
  return std::string(1, static_cast<char>(c));
}

void emit_list(const std::vector<Fragment>& frags, std::string& out);

void emit(const Fragment& f, std::string& out) {
  const Matcher& m = f.matcher;
  switch (m.kind) {
    case Matcher::Kind::literal: out += quote_literal(m.text); break;
    case Matcher::Kind::builtin:
      out += builtin_name(m.builtin);
      if (m.builtin == BuiltinKind::TIMESTAMP && !m.format.empty()) {
        out += "('";
        for (char c : m.format) {
          if (c == '\'' || c == '\\') out += '\\';
          out += c;
        }
        out += "')";
      }
      break;
    case Matcher::Kind::char_class:
      out += m.negated ? "[^" : "[";
      for (auto [lo, hi] : m.ranges) {
        out += class_char(lo);
        if (hi != lo) out += "-" + class_char(hi);
      }
      out += ']';
      break;
    case Matcher::Kind::group:
      out += '(';
      emit_list(m.body, out);
      out += ')';
      break;
    case Matcher::Kind::alternation:
      out += '(';
      for (std::size_t i = 0; i < m.branches.size(); ++i) {
        if (i) out += '|';
        emit_list(m.branches[i], out);
      }
      out += ')';
      break;
    case Matcher::Kind::lookahead:
      out += ">>";
      emit_list(m.body, out);
      break;
    case Matcher::Kind::array:
      out += "ARRAY{";
      emit_list(m.body, out);
      out += '}';
      break;
  }
  if (f.quantifier) out += quantifier_text(*f.quantifier);
  if (f.export_name) {
    out += ':';
    out += f.export_name->quoted ? quote_literal(f.export_name->name) : f.export_name->name;
  }
}

void emit_list(const std::vector<Fragment>& frags, std::string& out) {
  for (std::size_t i = 0; i < frags.size(); ++i) {
    if (i) out += ' ';
    emit(frags[i], out);
  }
}

}  // namespace

std::pair<std::string, std::vector<SourceSpan>> serialize_with_spans(const DplPattern& p) {
  if (p.fragments.empty()) throw EmptyPattern();
  std::string out;
  std::vector<SourceSpan> spans;
  for (std::size_t i = 0; i < p.fragments.size(); ++i) {
    if (i) out += ' ';
    std::size_t begin = out.size();
    emit(p.fragments[i], out);
    spans.push_back({begin, out.size()});
  }
  return {out, spans};
}

std::string serialize(const DplPattern& p) { return serialize_with_spans(p).first; }

std::string serialize(const Fragment& f) {
  std::string out;
  emit(f, out);
  return out;
}

void collect_exports(const std::vector<Fragment>& frags, std::vector<std::string>& out) {
  for (const auto& f : frags) {
    if (f.export_name) out.push_back(f.export_name->name);
    collect_exports(f.matcher.body, out);
    for (const auto& b : f.matcher.branches) collect_exports(b, out);
  }
}

std::vector<std::string> export_names(const DplPattern& p) {
  std::vector<std::string> out;
  collect_exports(p.fragments, out);
  return out;
}

}  // namespace rx2dpl::dpl
