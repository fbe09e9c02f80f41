#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rx2dpl/charset.hpp"

namespace rx2dpl::regex {

/// Half-open byte range into the regex source.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

enum class LiteralForm : std::uint8_t {
  plain,           // a
  escaped,         // \.
  representation,  // \n \t \x41 ...
};

struct LiteralChar {
  unsigned char value = 0;
  LiteralForm form = LiteralForm::plain;
  /// Bytes of source text the character was written with.
  std::uint8_t width = 1;
  bool operator==(const LiteralChar& o) const { return value == o.value && form == o.form; }
};

enum class Shorthand : std::uint8_t { digit, word, space, non_digit, non_word, non_space };

CharSet shorthand_set(Shorthand s);
char shorthand_letter(Shorthand s);
Shorthand negate(Shorthand s);
bool is_negated(Shorthand s);

struct ClassItem {
  enum class Kind : std::uint8_t { single, range, shorthand };
  Kind kind = Kind::single;
  unsigned char lo = 0;
  unsigned char hi = 0;
  Shorthand shorthand = Shorthand::digit;
  bool operator==(const ClassItem&) const = default;
};

enum class GroupKind : std::uint8_t { capturing, named, non_capturing };

enum class QuantMode : std::uint8_t { greedy, lazy, possessive };

/// How the quantifier was spelled; kept so that serialization round-trips.
enum class QuantForm : std::uint8_t { question, star, plus, exact, range, at_least };

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct Quantifier {
  std::size_t min = 1;
  std::size_t max = 1;  // kUnbounded for * + {x,}
  QuantMode mode = QuantMode::greedy;
  QuantForm form = QuantForm::exact;

  bool bounded() const { return max != kUnbounded; }
  bool fixed() const { return min == max; }
  bool operator==(const Quantifier&) const = default;
};

enum class AnchorKind : std::uint8_t { line_start, line_end, non_word_boundary };

enum class NodeKind : std::uint8_t {
  literal,
  dot,
  shorthand,
  char_class,
  group,
  alternation,
  sequence,
  quantified,
  anchor,
  lookahead,
};

/// One node of the parsed expression. A tagged record: only the fields
/// belonging to `kind` are meaningful.
///
/// Shape invariants produced by the parser:
///   - the root and every group/lookahead body is a `sequence` or an
///     `alternation` whose children are all `sequence`s;
///   - `sequence` children are never sequences;
///   - consecutive unquantified literal characters form one `literal` node;
///   - a `quantified` node's child is never itself `quantified`.
struct Node {
  NodeKind kind = NodeKind::sequence;
  Span span;

  std::vector<LiteralChar> literal;  // literal
  Shorthand shorthand = Shorthand::digit;
  std::vector<ClassItem> items;  // char_class
  bool negated = false;          // char_class
  GroupKind group_kind = GroupKind::non_capturing;
  std::string name;       // named group
  int capture_index = 0;  // capturing and named groups, 1-based
  Quantifier quantifier;  // quantified
  AnchorKind anchor = AnchorKind::line_start;
  std::vector<Node> children;

  const Node& child() const { return children.front(); }
};

struct RegexAst {
  Node root;
  std::string source;
  int capture_count = 0;
};

// Construction helpers, used by the parser and by analyses that synthesize
// sub-languages.
Node make_literal(std::vector<LiteralChar> chars, Span span = {});
Node make_literal(const std::string& text);
Node make_dot(Span span = {});
Node make_shorthand(Shorthand s, Span span = {});
Node make_class(std::vector<ClassItem> items, bool negated, Span span = {});
Node make_sequence(std::vector<Node> elements, Span span = {});
Node make_alternation(std::vector<Node> branches, Span span = {});
Node make_group(GroupKind kind, Node body, std::string name = {}, Span span = {});
Node make_quantified(Node child, Quantifier q, Span span = {});
Node make_anchor(AnchorKind kind, Span span = {});
Node make_lookahead(Node body, Span span = {});

/// Characters a single-character node (literal of length 1, dot, shorthand,
/// class) can match.
CharSet char_set_of(const Node& n);
bool is_single_char(const Node& n);
CharSet class_items_set(const std::vector<ClassItem>& items);

/// Structural equality: compares everything except spans.
bool structurally_equal(const Node& a, const Node& b);
bool structurally_equal(const RegexAst& a, const RegexAst& b);

/// Canonical PCRE text for a node / whole expression.
std::string to_regex(const Node& n);
std::string to_regex(const RegexAst& ast);
std::string quantifier_text(const Quantifier& q);

/// True when the subtree contains a node of the given kind.
bool contains_kind(const Node& n, NodeKind kind);
bool contains_named_group(const Node& n);
void collect_group_names(const Node& n, std::vector<std::string>& out);

}  // namespace rx2dpl::regex
