#include "rx2dpl/regex/ast.hpp"

#include <cstdio>
#include <string_view>

namespace rx2dpl::regex {

CharSet shorthand_set(Shorthand s) {
  switch (s) {
    case Shorthand::digit: return CharSet::digit();
    case Shorthand::word: return CharSet::word();
    case Shorthand::space: return CharSet::space();
    case Shorthand::non_digit: return ~CharSet::digit();
    case Shorthand::non_word: return ~CharSet::word();
    case Shorthand::non_space: return ~CharSet::space();
  }
  return {};
}

char shorthand_letter(Shorthand s) {
  switch (s) {
    case Shorthand::digit: return 'd';
    case Shorthand::word: return 'w';
    case Shorthand::space: return 's';
    case Shorthand::non_digit: return 'D';
    case Shorthand::non_word: return 'W';
    case Shorthand::non_space: return 'S';
  }
  return '?';
}

Shorthand negate(Shorthand s) {
  switch (s) {
    case Shorthand::digit: return Shorthand::non_digit;
    case Shorthand::word: return Shorthand::non_word;
    case Shorthand::space: return Shorthand::non_space;
    case Shorthand::non_digit: return Shorthand::digit;
    case Shorthand::non_word: return Shorthand::word;
    case Shorthand::non_space: return Shorthand::space;
  }
  return s;
}

bool is_negated(Shorthand s) {
  return s == Shorthand::non_digit || s == Shorthand::non_word || s == Shorthand::non_space;
}

Node make_literal(std::vector<LiteralChar> chars, Span span) {
  Node n;
  n.kind = NodeKind::literal;
  n.literal = std::move(chars);
  n.span = span;
  return n;
}

Node make_literal(const std::string& text) {
  std::vector<LiteralChar> chars;
  for (unsigned char c : text) chars.push_back({c, LiteralForm::plain});
  return make_literal(std::move(chars));
}

Node make_dot(Span span) {
  Node n;
  n.kind = NodeKind::dot;
  n.span = span;
  return n;
}

Node make_shorthand(Shorthand s, Span span) {
  Node n;
  n.kind = NodeKind::shorthand;
  n.shorthand = s;
  n.span = span;
  return n;
}

Node make_class(std::vector<ClassItem> items, bool negated, Span span) {
  Node n;
  n.kind = NodeKind::char_class;
  n.items = std::move(items);
  n.negated = negated;
  n.span = span;
  return n;
}

Node make_sequence(std::vector<Node> elements, Span span) {
  Node n;
  n.kind = NodeKind::sequence;
  n.children = std::move(elements);
  n.span = span;
  return n;
}

Node make_alternation(std::vector<Node> branches, Span span) {
  Node n;
  n.kind = NodeKind::alternation;
  n.children = std::move(branches);
  n.span = span;
  return n;
}

Node make_group(GroupKind kind, Node body, std::string name, Span span) {
  Node n;
  n.kind = NodeKind::group;
  n.group_kind = kind;
  n.name = std::move(name);
  n.children.push_back(std::move(body));
  n.span = span;
  return n;
}

Node make_quantified(Node child, Quantifier q, Span span) {
  Node n;
  n.kind = NodeKind::quantified;
  n.quantifier = q;
  n.children.push_back(std::move(child));
  n.span = span;
  return n;
}

Node make_anchor(AnchorKind kind, Span span) {
  Node n;
  n.kind = NodeKind::anchor;
  n.anchor = kind;
  n.span = span;
  return n;
}

Node make_lookahead(Node body, Span span) {
  Node n;
  n.kind = NodeKind::lookahead;
  n.children.push_back(std::move(body));
  n.span = span;
  return n;
}

CharSet class_items_set(const std::vector<ClassItem>& items) {
  CharSet s;
  for (const auto& it : items) {
    switch (it.kind) {
      case ClassItem::Kind::single: s.add(it.lo); break;
      case ClassItem::Kind::range: s.add_range(it.lo, it.hi); break;
      case ClassItem::Kind::shorthand: s |= shorthand_set(it.shorthand); break;
    }
  }
  return s;
}

bool is_single_char(const Node& n) {
  switch (n.kind) {
    case NodeKind::literal: return n.literal.size() == 1;
    case NodeKind::dot:
    case NodeKind::shorthand:
    case NodeKind::char_class: return true;
    default: return false;
  }
}

CharSet char_set_of(const Node& n) {
  switch (n.kind) {
    case NodeKind::literal: return n.literal.empty() ? CharSet{} : CharSet::single(n.literal.front().value);
    case NodeKind::dot: return CharSet::dot();
    case NodeKind::shorthand: return shorthand_set(n.shorthand);
    case NodeKind::char_class: {
      CharSet s = class_items_set(n.items);
      return n.negated ? ~s : s;
    }
    default: return {};
  }
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::literal:
      if (a.literal != b.literal) return false;
      break;
    case NodeKind::shorthand:
      if (a.shorthand != b.shorthand) return false;
      break;
    case NodeKind::char_class:
      if (a.items != b.items || a.negated != b.negated) return false;
      break;
    case NodeKind::group:
      if (a.group_kind != b.group_kind || a.name != b.name || a.capture_index != b.capture_index) return false;
      break;
    case NodeKind::quantified:
      if (!(a.quantifier == b.quantifier)) return false;
      break;
    case NodeKind::anchor:
      if (a.anchor != b.anchor) return false;
      break;
    default: break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  return true;
}

bool structurally_equal(const RegexAst& a, const RegexAst& b) {
  return a.capture_count == b.capture_count && structurally_equal(a.root, b.root);
}

namespace {

std::string hex_escape(unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02X", c);
  return buf;
}

std::string representation_text(unsigned char c) {
  switch (c) {
    case '\n': return "\\n";
    case '\t': return "\\t";
    case '\r': return "\\r";
    case '\f': return "\\f";
    default: return hex_escape(c);
  }
}

std::string literal_char_text(const LiteralChar& lc) {
  switch (lc.form) {
    case LiteralForm::plain:
      // Synthesized literals may carry metacharacters under the plain form.
      if (std::string_view(".^$|()[*+?\\").find(static_cast<char>(lc.value)) != std::string_view::npos)
        return std::string("\\") + static_cast<char>(lc.value);
      return std::string(1, static_cast<char>(lc.value));
    case LiteralForm::escaped: return std::string("\\") + static_cast<char>(lc.value);
    case LiteralForm::representation: return representation_text(lc.value);
  }
  return {};
}

std::string class_char_text(unsigned char c) {
  if (c == ']' || c == '\\' || c == '^' || c == '-' || c == '[') return std::string("\\") + static_cast<char>(c);
  if (c < 0x20 || c >= 0x7F) return representation_text(c);
  return std::string(1, static_cast<char>(c));
}

void emit(const Node& n, std::string& out);

void emit_body(const Node& n, std::string& out) { emit(n, out); }

void emit(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::literal:
      for (const auto& lc : n.literal) out += literal_char_text(lc);
      break;
    case NodeKind::dot: out += '.'; break;
    case NodeKind::shorthand:
      out += '\\';
      out += shorthand_letter(n.shorthand);
      break;
    case NodeKind::char_class:
      out += n.negated ? "[^" : "[";
      for (const auto& it : n.items) {
        switch (it.kind) {
          case ClassItem::Kind::single: out += class_char_text(it.lo); break;
          case ClassItem::Kind::range:
            out += class_char_text(it.lo);
            out += '-';
            out += class_char_text(it.hi);
            break;
          case ClassItem::Kind::shorthand:
            out += '\\';
            out += shorthand_letter(it.shorthand);
            break;
        }
      }
      out += ']';
      break;
    case NodeKind::group:
      switch (n.group_kind) {
        case GroupKind::capturing: out += '('; break;
        case GroupKind::non_capturing: out += "(?:"; break;
        case GroupKind::named: out += "(?<" + n.name + ">"; break;
      }
      emit_body(n.child(), out);
      out += ')';
      break;
    case NodeKind::alternation:
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += '|';
        emit(n.children[i], out);
      }
      break;
    case NodeKind::sequence:
      for (const auto& c : n.children) emit(c, out);
      break;
    case NodeKind::quantified: {
      const Node& c = n.child();
      bool wrap = (c.kind == NodeKind::literal && c.literal.size() != 1) || c.kind == NodeKind::sequence ||
                  c.kind == NodeKind::alternation;
      if (wrap) out += "(?:";
      emit(c, out);
      if (wrap) out += ')';
      out += quantifier_text(n.quantifier);
      break;
    }
    case NodeKind::anchor:
      switch (n.anchor) {
        case AnchorKind::line_start: out += '^'; break;
        case AnchorKind::line_end: out += '$'; break;
        case AnchorKind::non_word_boundary: out += "\\B"; break;
      }
      break;
    case NodeKind::lookahead:
      out += "(?=";
      emit(n.child(), out);
      out += ')';
      break;
  }
}

}  // namespace

std::string quantifier_text(const Quantifier& q) {
  std::string s;
  switch (q.form) {
    case QuantForm::question: s = "?"; break;
    case QuantForm::star: s = "*"; break;
    case QuantForm::plus: s = "+"; break;
    case QuantForm::exact: s = "{" + std::to_string(q.min) + "}"; break;
    case QuantForm::range: s = "{" + std::to_string(q.min) + "," + std::to_string(q.max) + "}"; break;
    case QuantForm::at_least: s = "{" + std::to_string(q.min) + ",}"; break;
  }
  if (q.mode == QuantMode::lazy) s += '?';
  if (q.mode == QuantMode::possessive) s += '+';
  return s;
}

std::string to_regex(const Node& n) {
  std::string out;
  emit(n, out);
  return out;
}

std::string to_regex(const RegexAst& ast) { return to_regex(ast.root); }

bool contains_kind(const Node& n, NodeKind kind) {
  if (n.kind == kind) return true;
  for (const auto& c : n.children)
    if (contains_kind(c, kind)) return true;
  return false;
}

bool contains_named_group(const Node& n) {
  if (n.kind == NodeKind::group && n.group_kind == GroupKind::named) return true;
  for (const auto& c : n.children)
    if (contains_named_group(c)) return true;
  return false;
}

void collect_group_names(const Node& n, std::vector<std::string>& out) {
  if (n.kind == NodeKind::group && n.group_kind == GroupKind::named) out.push_back(n.name);
  for (const auto& c : n.children) collect_group_names(c, out);
}

}  // namespace rx2dpl::regex
