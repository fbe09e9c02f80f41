#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rx2dpl/regex/ast.hpp"

namespace rx2dpl::convert {

enum class Strategy : std::uint8_t { FGQ, LGQ, NGQ, FLQ, NLQ, LLQ, SLQ, direct, none };

/// "FGQ", ..., "direct", "none".
const char* strategy_tag(Strategy s);

/// Position of a node inside its parent, as seen from the root.
struct PathEntry {
  const regex::Node* node;
  std::size_t child;
};

/// One element of what has to match after a quantified node.
struct Piece {
  regex::Node node;
  /// Further repetitions of an enclosing quantified group.
  bool iteration = false;
  bool nullable = false;
  /// Reached only after leaving an atomic repetition (ARRAY) in the output.
  bool beyond_array = false;
};

/// Everything that follows a node up to the end of the expression; the end
/// of the expression is followed by arbitrary input.
struct Continuation {
  std::vector<Piece> pieces;
  /// The node sits inside a lookahead body.
  bool inside_lookahead = false;
};

Continuation continuation_of(const std::vector<PathEntry>& path);

bool nullable(const regex::Node& n);
/// Contains an anchor or a lookahead.
bool has_assertion(const regex::Node& n);
/// At most one way to match at any position.
bool deterministic(const regex::Node& n);
/// Bytes a match can start with (empty for zero-width nodes).
CharSet first_chars(const regex::Node& n);

/// The dot and the match-anything class both become lazy-like LD/DATA in DPL.
bool is_dot_like(const regex::Node& n);

/// Every remaining piece can match the empty string without assertions.
bool always_succeeds(const Continuation& c);

/// Successor check between a quantified node's unit and its continuation.
struct IntersectionQuery {
  regex::Span u;
  /// Pieces up to and including the first one that cannot be skipped.
  std::vector<regex::Span> v;
  /// L(unit) against L(successors).
  bool unit_verdict = false;
  /// L(unit{1,3}) against L(successors).
  bool repeated_verdict = false;
  /// L(unit) Σ* against L(successors) Σ*: some unit match and some
  /// continuation match can start with each other.
  bool prefix_verdict = false;
  /// Any of the above intersect; `true` means the possessive form is unsafe.
  bool verdict = false;
};

IntersectionQuery successor_query(const regex::Node& quantified, const Continuation& c);

/// The immediate successor can only start where `set` cannot continue, or
/// only at the end of input.
bool successor_blocks(const CharSet& set, const Continuation& c);

/// How the quantified node is written in the output.
enum class Emit : std::uint8_t { as_is, to_min, omit };

struct Decision {
  Strategy strategy = Strategy::none;
  Emit emit = Emit::as_is;
  std::optional<std::string> unsafe_reason;
  std::optional<IntersectionQuery> query;
  bool dot = false;
};

Decision classify_greedy(const regex::Node& q, const Continuation& c);
Decision classify_lazy(const regex::Node& q, const Continuation& c);
/// Dispatches on the quantifier mode; possessive nodes convert directly.
Decision classify(const regex::Node& q, const Continuation& c);

}  // namespace rx2dpl::convert
