#include "rx2dpl/dpl/syntax.hpp"

#include <cctype>
#include <map>

#include "rx2dpl/error.hpp"

namespace rx2dpl::dpl {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  DplPattern run() {
    skip_ws();
    if (at_end()) throw DplSyntaxError(0, "empty pattern");
    DplPattern p;
    p.fragments = parse_list();
    skip_ws();
    if (!at_end()) throw DplSyntaxError(pos_, std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void expect(char c) {
    if (at_end() || peek() != c) throw DplSyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  bool at_list_end() const {
    if (at_end()) return true;
    char c = peek();
    return c == ')' || c == '|' || c == '}';
  }

  std::vector<Fragment> parse_list() {
    std::vector<Fragment> out;
    skip_ws();
    while (!at_list_end()) {
      out.push_back(parse_element());
      skip_ws();
    }
    return out;
  }

  Fragment parse_element() {
    std::size_t begin = pos_;
    if (peek() == '>' && peek(1) == '>') {
      pos_ += 2;
      skip_ws();
      if (at_list_end()) throw DplSyntaxError(begin, "lookahead without a matcher");
      return lookahead(parse_element());
    }
    Fragment f = parse_primary();
    if (auto q = parse_quantifier()) f.quantifier = q;
    if (peek() == ':') {
      ++pos_;
      f.export_name = parse_export();
    }
    return f;
  }

  std::string parse_quoted() {
    std::size_t begin = pos_;
    char quote = peek();
    ++pos_;
    std::string out;
    for (;;) {
      if (at_end()) throw DplSyntaxError(begin, "unterminated string");
      char c = peek();
      ++pos_;
      if (c == quote) break;
      if (c == '\\') {
        if (at_end()) throw DplSyntaxError(begin, "unterminated string");
        char e = peek();
        if (e != '"' && e != '\'' && e != '\\') throw DplSyntaxError(pos_ - 1, std::string("invalid escape \\") + e);
        out += e;
        ++pos_;
        continue;
      }
      out += c;
    }
    return out;
  }

  ExportName parse_export() {
    if (peek() == '"' || peek() == '\'') return {parse_quoted(), true};
    std::size_t begin = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.')) ++pos_;
    if (pos_ == begin) throw DplSyntaxError(begin, "missing export name");
    return {s_.substr(begin, pos_ - begin), false};
  }

  std::size_t parse_number() {
    std::size_t begin = pos_;
    std::size_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::size_t>(peek() - '0');
      if (v > 1'000'000'000) throw DplSyntaxError(begin, "quantifier bound too large");
      ++pos_;
    }
    if (pos_ == begin) throw DplSyntaxError(begin, "expected a number");
    return v;
  }

  std::optional<DplQuantifier> parse_quantifier() {
    switch (peek()) {
      case '?': ++pos_; return DplQuantifier::optional_marker();
      case '*': ++pos_; return DplQuantifier::star();
      case '+': ++pos_; return DplQuantifier::plus();
      case '{': break;
      default: return std::nullopt;
    }
    std::size_t begin = pos_;
    ++pos_;
    skip_ws();
    DplQuantifier q;
    if (peek() == ',') {
      ++pos_;
      skip_ws();
      q = DplQuantifier::at_most(parse_number());
    } else {
      std::size_t lo = parse_number();
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        skip_ws();
        if (peek() == '}') {
          q = DplQuantifier::at_least(lo);
        } else {
          std::size_t hi = parse_number();
          q = DplQuantifier::range(lo, hi);
        }
      } else {
        q = DplQuantifier::exact(lo);
      }
    }
    skip_ws();
    if (peek() != '}') throw DplSyntaxError(begin, "unterminated quantifier");
    ++pos_;
    return q;
  }

  unsigned char class_char() {
    char c = peek();
    ++pos_;
    if (c != '\\') return static_cast<unsigned char>(c);
    if (at_end()) throw DplSyntaxError(pos_, "unterminated character class");
    char e = peek();
    ++pos_;
    switch (e) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case 'f': return '\f';
      case 'x': {
        int h1 = hex_value(peek());
        int h2 = hex_value(peek(1));
        if (h1 < 0 || h2 < 0) throw DplSyntaxError(pos_, "malformed hex escape");
        pos_ += 2;
        return static_cast<unsigned char>(h1 * 16 + h2);
      }
      default: return static_cast<unsigned char>(e);
    }
  }

  Fragment parse_class() {
    std::size_t begin = pos_;
    ++pos_;
    bool negated = false;
    if (peek() == '^') {
      negated = true;
      ++pos_;
    }
    std::vector<std::pair<unsigned char, unsigned char>> ranges;
    bool first = true;
    for (;;) {
      if (at_end()) throw DplSyntaxError(begin, "unterminated character class");
      if (peek() == ']' && !first) {
        ++pos_;
        break;
      }
      first = false;
      unsigned char lo = class_char();
      unsigned char hi = lo;
      if (peek() == '-' && peek(1) != ']' && pos_ + 1 < s_.size()) {
        ++pos_;
        hi = class_char();
        if (hi < lo) throw DplSyntaxError(begin, "range out of order in character class");
      }
      ranges.emplace_back(lo, hi);
    }
    return char_class(std::move(ranges), negated);
  }

  Fragment parse_paren() {
    std::size_t begin = pos_;
    ++pos_;
    std::vector<std::vector<Fragment>> branches;
    branches.push_back(parse_list());
    while (peek() == '|') {
      ++pos_;
      branches.push_back(parse_list());
    }
    if (peek() != ')') throw DplSyntaxError(begin, "unbalanced parenthesis");
    ++pos_;
    if (branches.size() == 1) return group(std::move(branches.front()));
    return alternation(std::move(branches));
  }

  Fragment parse_primary() {
    std::size_t begin = pos_;
    char c = peek();
    if (c == '"' || c == '\'') return literal(parse_quoted());
    if (c == '[') return parse_class();
    if (c == '(') return parse_paren();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      std::string word = s_.substr(begin, pos_ - begin);
      if (word == "ARRAY") {
        skip_ws();
        if (peek() != '{') throw DplSyntaxError(pos_, "expected '{' after ARRAY");
        ++pos_;
        auto body = parse_list();
        if (peek() != '}') throw DplSyntaxError(begin, "unterminated ARRAY");
        ++pos_;
        return array(std::move(body));
      }
      auto kind = builtin_from_name(word);
      if (!kind) throw DplSyntaxError(begin, "unknown matcher '" + word + "'");
      Fragment f = builtin(*kind);
      if (*kind == BuiltinKind::TIMESTAMP && peek() == '(') {
        ++pos_;
        skip_ws();
        if (peek() != '\'' && peek() != '"') throw DplSyntaxError(pos_, "expected a quoted format");
        f.matcher.format = parse_quoted();
        skip_ws();
        expect(')');
      }
      return f;
    }
    if (at_end()) throw DplSyntaxError(pos_, "unexpected end of pattern");
    throw DplSyntaxError(pos_, std::string("unexpected '") + c + "'");
  }
};

void check(const std::vector<Fragment>& frags, std::vector<std::size_t>& path, std::map<std::string, int>& seen,
           std::vector<Diagnostic>& out, bool inside_array) {
  for (std::size_t i = 0; i < frags.size(); ++i) {
    const Fragment& f = frags[i];
    path.push_back(i);
    if (f.export_name) {
      const ExportName& e = *f.export_name;
      if (e.name.empty()) {
        out.push_back({"invalid-export-name", "export name is empty", path});
      } else if (!e.quoted && !is_plain_export_name(e.name)) {
        if (e.name.find('.') != std::string::npos)
          out.push_back({"invalid-export-name", "export name '" + e.name + "' contains a period and must be quoted", path});
        else
          out.push_back({"invalid-export-name", "export name '" + e.name + "' must start with a letter", path});
      }
      if (++seen[e.name] == 2) out.push_back({"duplicate-export", "export name '" + e.name + "' is used more than once", path});
      if (inside_array) out.push_back({"export-in-array", "export '" + e.name + "' inside a repeated group", path});
    }
    if (f.quantifier) {
      const DplQuantifier& q = *f.quantifier;
      if (q.form == DplQuantifier::Form::range && q.min > q.max)
        out.push_back({"bad-quantifier", "quantifier minimum exceeds maximum", path});
      // LD{0} is the empty placeholder the converter emits for an omitted body.
      bool placeholder = f.matcher.kind == Matcher::Kind::builtin &&
                         (f.matcher.builtin == BuiltinKind::LD || f.matcher.builtin == BuiltinKind::DATA);
      if ((q.form == DplQuantifier::Form::at_most || q.form == DplQuantifier::Form::range ||
           q.form == DplQuantifier::Form::exact) && q.max == 0 && !placeholder)
        out.push_back({"bad-quantifier", "quantifier allows zero repetitions only", path});
    }
    const Matcher& m = f.matcher;
    switch (m.kind) {
      case Matcher::Kind::literal:
        if (m.text.empty()) out.push_back({"empty-literal", "empty quoted literal", path});
        break;
      case Matcher::Kind::char_class:
        if (m.ranges.empty()) out.push_back({"empty-class", "empty character class", path});
        break;
      case Matcher::Kind::builtin:
        if (m.builtin == BuiltinKind::BOS || m.builtin == BuiltinKind::EOS || m.builtin == BuiltinKind::LF) {
          if (f.quantifier && f.quantifier->form != DplQuantifier::Form::optional && (f.quantifier->max > 1))
            out.push_back({"bad-quantifier", std::string(builtin_name(m.builtin)) + " cannot repeat", path});
        }
        break;
      case Matcher::Kind::group:
      case Matcher::Kind::array:
        if (m.body.empty()) out.push_back({"empty-group", "empty group", path});
        check(m.body, path, seen, out, inside_array || m.kind == Matcher::Kind::array);
        break;
      case Matcher::Kind::lookahead:
        if (f.quantifier) out.push_back({"bad-quantifier", "lookahead cannot be quantified", path});
        if (f.export_name) out.push_back({"export-on-lookahead", "lookahead cannot export", path});
        check(m.body, path, seen, out, inside_array);
        break;
      case Matcher::Kind::alternation:
        for (const auto& b : m.branches) {
          if (b.empty()) out.push_back({"empty-branch", "empty alternative", path});
          check(b, path, seen, out, inside_array);
        }
        break;
    }
    path.pop_back();
  }
}

}  // namespace

DplPattern parse_dpl(const std::string& text) { return Parser(text).run(); }

std::vector<Diagnostic> validate_syntax(const DplPattern& p) {
  std::vector<Diagnostic> out;
  if (p.fragments.empty()) out.push_back({"empty-pattern", "pattern has no fragments", {}});
  std::vector<std::size_t> path;
  std::map<std::string, int> seen;
  check(p.fragments, path, seen, out, false);
  return out;
}

}  // namespace rx2dpl::dpl
