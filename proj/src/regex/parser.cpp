#include "rx2dpl/regex/parser.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "rx2dpl/error.hpp"

namespace rx2dpl::regex {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<Shorthand> shorthand_for(char c) {
  switch (c) {
    case 'd': return Shorthand::digit;
    case 'w': return Shorthand::word;
    case 's': return Shorthand::space;
    case 'D': return Shorthand::non_digit;
    case 'W': return Shorthand::non_word;
    case 'S': return Shorthand::non_space;
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(const std::string& src) : s_(src) {}

  RegexAst run() {
    if (s_.empty()) throw SyntaxError(0, "empty pattern");
    RegexAst ast;
    ast.source = s_;
    ast.root = parse_alternation();
    if (pos_ < s_.size()) {
      // Only an unmatched ')' stops the top-level alternation early.
      throw SyntaxError(pos_, "unbalanced parenthesis");
    }
    ast.capture_count = captures_;
    return ast;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int captures_ = 0;
  std::set<std::string> names_;

  bool at_end() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  bool starts_with(const char* lit) const { return s_.compare(pos_, std::char_traits<char>::length(lit), lit) == 0; }

  Node parse_alternation() {
    std::size_t begin = pos_;
    std::vector<Node> branches;
    branches.push_back(parse_sequence());
    while (!at_end() && peek() == '|') {
      ++pos_;
      branches.push_back(parse_sequence());
    }
    if (branches.size() == 1) return std::move(branches.front());
    return make_alternation(std::move(branches), {begin, pos_});
  }

  Node parse_sequence() {
    std::size_t begin = pos_;
    std::vector<Node> items;
    while (!at_end() && peek() != '|' && peek() != ')') {
      std::size_t atom_begin = pos_;
      if (peek() == '*' || peek() == '+' || peek() == '?' || valid_brace_quantifier_at(pos_))
        throw SyntaxError(pos_, "quantifier has nothing to repeat");
      Node atom = parse_atom();
      if (auto q = parse_quantifier()) {
        if (atom.kind == NodeKind::anchor) throw SyntaxError(atom_begin, "quantifier applied to an anchor");
        if (atom.kind == NodeKind::lookahead) throw SyntaxError(atom_begin, "quantifier applied to a lookahead");
        if (peek() == '*' || peek() == '+' || peek() == '?' || valid_brace_quantifier_at(pos_))
          throw SyntaxError(pos_, "double quantifier");
        atom = make_quantified(std::move(atom), *q, {atom_begin, pos_});
      }
      append(items, std::move(atom));
    }
    return make_sequence(std::move(items), {begin, pos_});
  }

  static void append(std::vector<Node>& items, Node atom) {
    if (atom.kind == NodeKind::literal && !items.empty() && items.back().kind == NodeKind::literal) {
      Node& prev = items.back();
      prev.literal.insert(prev.literal.end(), atom.literal.begin(), atom.literal.end());
      prev.span.end = atom.span.end;
      return;
    }
    items.push_back(std::move(atom));
  }

  // Scans `{n}`, `{n,}`, `{n,m}` starting at `at`; returns the offset past
  // the closing brace, or 0 when the text is not a quantifier.
  std::size_t brace_quantifier_end(std::size_t at) const {
    if (at >= s_.size() || s_[at] != '{') return 0;
    std::size_t i = at + 1;
    std::size_t digits = 0;
    while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i, ++digits;
    if (digits == 0) return 0;
    if (i < s_.size() && s_[i] == ',') {
      ++i;
      while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
    }
    if (i < s_.size() && s_[i] == '}') return i + 1;
    return 0;
  }
  bool valid_brace_quantifier_at(std::size_t at) const { return brace_quantifier_end(at) != 0; }

  std::size_t read_number(std::size_t& i) const {
    std::size_t v = 0;
    std::size_t start = i;
    while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) {
      v = v * 10 + static_cast<std::size_t>(s_[i] - '0');
      if (v > kMaxQuantifierBound) throw SyntaxError(start, "quantifier bound too large");
      ++i;
    }
    return v;
  }

  std::optional<Quantifier> parse_quantifier() {
    if (at_end()) return std::nullopt;
    Quantifier q;
    char c = peek();
    if (c == '*') {
      q = {0, kUnbounded, QuantMode::greedy, QuantForm::star};
      ++pos_;
    } else if (c == '+') {
      q = {1, kUnbounded, QuantMode::greedy, QuantForm::plus};
      ++pos_;
    } else if (c == '?') {
      q = {0, 1, QuantMode::greedy, QuantForm::question};
      ++pos_;
    } else if (std::size_t end = brace_quantifier_end(pos_)) {
      std::size_t start = pos_;
      std::size_t i = pos_ + 1;
      q.min = read_number(i);
      if (s_[i] == ',') {
        ++i;
        if (s_[i] == '}') {
          q.max = kUnbounded;
          q.form = QuantForm::at_least;
        } else {
          q.max = read_number(i);
          q.form = QuantForm::range;
          if (q.max < q.min) throw SyntaxError(start, "quantifier bounds out of order");
        }
      } else {
        q.max = q.min;
        q.form = QuantForm::exact;
      }
      pos_ = end;
    } else {
      return std::nullopt;
    }
    if (peek() == '?' && !at_end()) {
      q.mode = QuantMode::lazy;
      ++pos_;
    } else if (peek() == '+' && !at_end()) {
      q.mode = QuantMode::possessive;
      ++pos_;
    }
    return q;
  }

  Node literal_node(unsigned char c, LiteralForm form, std::size_t begin) {
    return make_literal({LiteralChar{c, form, static_cast<std::uint8_t>(pos_ - begin)}}, {begin, pos_});
  }

  Node parse_atom() {
    std::size_t begin = pos_;
    char c = peek();
    switch (c) {
      case '(': return parse_group();
      case '[': return parse_class();
      case '.': ++pos_; return make_dot({begin, pos_});
      case '^': ++pos_; return make_anchor(AnchorKind::line_start, {begin, pos_});
      case '$': ++pos_; return make_anchor(AnchorKind::line_end, {begin, pos_});
      case '\\': return parse_escape();
      default: ++pos_; return literal_node(static_cast<unsigned char>(c), LiteralForm::plain, begin);
    }
  }

  std::string parse_group_name(char terminator) {
    std::size_t start = pos_;
    if (at_end() || !is_name_start(peek())) throw SyntaxError(start, "invalid group name");
    while (!at_end() && is_name_char(peek())) ++pos_;
    if (at_end() || peek() != terminator) throw SyntaxError(pos_, "invalid group name");
    std::string name = s_.substr(start, pos_ - start);
    ++pos_;
    if (!names_.insert(name).second) throw SyntaxError(start, "duplicate group name '" + name + "'");
    return name;
  }

  void expect_close(std::size_t open) {
    if (at_end() || peek() != ')') throw SyntaxError(open, "unbalanced parenthesis");
    ++pos_;
  }

  Node parse_group() {
    std::size_t begin = pos_;
    ++pos_;  // (
    if (peek() != '?') {
      int index = ++captures_;
      Node body = parse_alternation();
      expect_close(begin);
      Node g = make_group(GroupKind::capturing, std::move(body), {}, {begin, pos_});
      g.capture_index = index;
      return g;
    }
    ++pos_;  // ?
    if (peek() == ':') {
      ++pos_;
      Node body = parse_alternation();
      expect_close(begin);
      return make_group(GroupKind::non_capturing, std::move(body), {}, {begin, pos_});
    }
    if (peek() == '=') {
      ++pos_;
      Node body = parse_alternation();
      expect_close(begin);
      return make_lookahead(std::move(body), {begin, pos_});
    }
    if (peek() == '!') throw UnsupportedFeature(begin, "negative lookahead");
    if (starts_with("<=") || starts_with("<!")) throw UnsupportedFeature(begin, "lookbehind");
    if (peek() == '>') throw UnsupportedFeature(begin, "atomic group");
    if (peek() == '#') throw UnsupportedFeature(begin, "comment");
    if (peek() == '|') throw UnsupportedFeature(begin, "branch reset group");
    if (starts_with("P=")) throw UnsupportedFeature(begin, "backreference");
    if (starts_with("P>") || peek() == 'R' || peek() == '&' || std::isdigit(static_cast<unsigned char>(peek())) ||
        peek() == '+' || peek() == '-')
      throw UnsupportedFeature(begin, "recursion");
    if (peek() == '(') throw UnsupportedFeature(begin, "conditional group");
    std::string name;
    if (peek() == '<') {
      ++pos_;
      name = parse_group_name('>');
    } else if (starts_with("P<")) {
      pos_ += 2;
      name = parse_group_name('>');
    } else if (peek() == '\'') {
      ++pos_;
      name = parse_group_name('\'');
    } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '^' || peek() == ')') {
      throw UnsupportedFeature(begin, "mode modifier");
    } else {
      throw SyntaxError(begin, "unrecognized group syntax");
    }
    int index = ++captures_;
    Node body = parse_alternation();
    expect_close(begin);
    Node g = make_group(GroupKind::named, std::move(body), name, {begin, pos_});
    g.capture_index = index;
    return g;
  }

  // Decodes `\xHH` or `\x{H..}` with pos_ just past the `x`.
  unsigned char parse_hex(std::size_t begin) {
    int v = 0;
    if (peek() == '{') {
      ++pos_;
      int digits = 0;
      while (!at_end() && hex_value(peek()) >= 0) {
        v = v * 16 + hex_value(peek());
        ++pos_;
        if (++digits > 2 || v > 0xFF) throw UnsupportedFeature(begin, "code point above 0xFF");
      }
      if (digits == 0 || peek() != '}') throw SyntaxError(begin, "malformed hex escape");
      ++pos_;
      return static_cast<unsigned char>(v);
    }
    int digits = 0;
    while (digits < 2 && !at_end() && hex_value(peek()) >= 0) {
      v = v * 16 + hex_value(peek());
      ++pos_;
      ++digits;
    }
    return static_cast<unsigned char>(v);
  }

  unsigned char parse_octal_zero() {
    // pos_ just past "\0"; up to two more octal digits.
    int v = 0;
    for (int i = 0; i < 2 && peek() >= '0' && peek() <= '7' && !at_end(); ++i) {
      v = v * 8 + (peek() - '0');
      ++pos_;
    }
    return static_cast<unsigned char>(v);
  }

  [[noreturn]] void reject_escape(std::size_t begin, char e) {
    switch (e) {
      case 'b': throw UnsupportedFeature(begin, "word boundary");
      case 'A':
      case 'z':
      case 'Z':
      case 'G': throw UnsupportedFeature(begin, "match boundary");
      case 'k':
      case 'g': throw UnsupportedFeature(begin, "backreference");
      case 'p':
      case 'P':
      case 'X': throw UnsupportedFeature(begin, "unicode property");
      case 'Q':
      case 'E': throw UnsupportedFeature(begin, "quoting");
      case 'K': throw UnsupportedFeature(begin, "match reset");
      case 'h':
      case 'H':
      case 'v':
      case 'V':
      case 'R':
      case 'N':
      case 'C': throw UnsupportedFeature(begin, std::string("escape \\") + e);
      default:
        if (std::isdigit(static_cast<unsigned char>(e))) throw UnsupportedFeature(begin, "backreference");
        throw SyntaxError(begin, std::string("unknown escape \\") + e);
    }
  }

  Node parse_escape() {
    std::size_t begin = pos_;
    ++pos_;
    if (at_end()) throw SyntaxError(begin, "trailing backslash");
    char e = peek();
    ++pos_;
    if (auto sh = shorthand_for(e)) return make_shorthand(*sh, {begin, pos_});
    switch (e) {
      case 'n': return literal_node('\n', LiteralForm::representation, begin);
      case 't': return literal_node('\t', LiteralForm::representation, begin);
      case 'r': return literal_node('\r', LiteralForm::representation, begin);
      case 'f': return literal_node('\f', LiteralForm::representation, begin);
      case 'e': return literal_node(0x1B, LiteralForm::representation, begin);
      case 'a': return literal_node(0x07, LiteralForm::representation, begin);
      case '0': {
        return literal_node(parse_octal_zero(), LiteralForm::representation, begin);
      }
      case 'x': {
        return literal_node(parse_hex(begin), LiteralForm::representation, begin);
      }
      case 'B': return make_anchor(AnchorKind::non_word_boundary, {begin, pos_});
      default: break;
    }
    if (std::isalnum(static_cast<unsigned char>(e))) reject_escape(begin, e);
    return literal_node(static_cast<unsigned char>(e), LiteralForm::escaped, begin);
  }

  // One class member: a character (returned) or a shorthand (stored in `sh`).
  std::optional<unsigned char> parse_class_char(std::optional<Shorthand>& sh) {
    std::size_t begin = pos_;
    char c = peek();
    ++pos_;
    if (c != '\\') return static_cast<unsigned char>(c);
    if (at_end()) throw SyntaxError(begin, "trailing backslash");
    char e = peek();
    ++pos_;
    if (auto s = shorthand_for(e)) {
      sh = s;
      return std::nullopt;
    }
    switch (e) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case 'f': return '\f';
      case 'e': return 0x1B;
      case 'a': return 0x07;
      case 'b': return 0x08;
      case '0': return parse_octal_zero();
      case 'x': return parse_hex(begin);
      default: break;
    }
    if (std::isalnum(static_cast<unsigned char>(e))) reject_escape(begin, e);
    return static_cast<unsigned char>(e);
  }

  Node parse_class() {
    std::size_t begin = pos_;
    ++pos_;  // [
    bool negated = false;
    if (peek() == '^' && !at_end()) {
      negated = true;
      ++pos_;
    }
    std::vector<ClassItem> items;
    bool first = true;
    for (;;) {
      if (at_end()) throw SyntaxError(begin, "missing terminating ] for character class");
      if (peek() == ']' && !first) {
        ++pos_;
        break;
      }
      if (starts_with("[:") || starts_with("[=") || starts_with("[.")) {
        std::size_t close = s_.find(std::string(1, s_[pos_ + 1]) + "]", pos_ + 2);
        if (close != std::string::npos) throw UnsupportedFeature(pos_, "POSIX character class");
      }
      first = false;
      std::size_t item_begin = pos_;
      std::optional<Shorthand> sh;
      auto lo = parse_class_char(sh);
      if (!lo) {
        items.push_back({ClassItem::Kind::shorthand, 0, 0, *sh});
        if (peek() == '-' && peek(1) != ']' && pos_ + 1 < s_.size())
          throw SyntaxError(item_begin, "invalid range in character class");
        continue;
      }
      if (peek() == '-' && pos_ + 1 < s_.size() && peek(1) != ']') {
        ++pos_;
        std::size_t hi_begin = pos_;
        std::optional<Shorthand> hsh;
        auto hi = parse_class_char(hsh);
        if (!hi) throw SyntaxError(hi_begin, "invalid range in character class");
        if (*hi < *lo) throw SyntaxError(item_begin, "range out of order in character class");
        items.push_back({ClassItem::Kind::range, *lo, *hi, Shorthand::digit});
        continue;
      }
      items.push_back({ClassItem::Kind::single, *lo, *lo, Shorthand::digit});
    }
    return make_class(std::move(items), negated, {begin, pos_});
  }
};

}  // namespace

RegexAst parse_regex(const std::string& source) { return Parser(source).run(); }

}  // namespace rx2dpl::regex
