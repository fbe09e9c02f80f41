#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rx2dpl/charset.hpp"

namespace rx2dpl::dpl {

enum class BuiltinKind : std::uint8_t {
  LD,
  DATA,
  DIGIT,
  SPACE,
  NSPACE,
  WORD,
  LF,
  BOS,
  EOS,
  IPADDR,
  IPV4,
  INT,
  LONG,
  DOUBLE,
  TIMESTAMP,
};

/// Canonical spelling (`IPv4` for IPV4).
const char* builtin_name(BuiltinKind k);
/// Accepts canonical names and the upper-case `IPV4` spelling.
std::optional<BuiltinKind> builtin_from_name(const std::string& name);
/// Typed matchers produce a value besides the text: IPADDR, IPV4, INT, LONG,
/// DOUBLE, TIMESTAMP.
bool is_typed(BuiltinKind k);

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
inline constexpr const char* kDefaultTimestampFormat = "yyyy-MM-dd HH:mm:ss";

struct DplQuantifier {
  enum class Form : std::uint8_t { optional, exact, range, at_least, at_most, star, plus };
  Form form = Form::exact;
  std::size_t min = 1;
  std::size_t max = 1;

  static DplQuantifier optional_marker() { return {Form::optional, 0, 0}; }
  static DplQuantifier exact(std::size_t n) { return {Form::exact, n, n}; }
  static DplQuantifier range(std::size_t lo, std::size_t hi) { return {Form::range, lo, hi}; }
  static DplQuantifier at_least(std::size_t lo) { return {Form::at_least, lo, kUnbounded}; }
  static DplQuantifier at_most(std::size_t hi) { return {Form::at_most, 0, hi}; }
  static DplQuantifier star() { return {Form::star, 0, kUnbounded}; }
  static DplQuantifier plus() { return {Form::plus, 1, kUnbounded}; }

  bool operator==(const DplQuantifier&) const = default;
};

std::string quantifier_text(const DplQuantifier& q);

struct ExportName {
  std::string name;
  bool quoted = false;
  bool operator==(const ExportName&) const = default;
};

/// Unquoted export names: a letter, then letters, digits or underscores.
bool is_plain_export_name(const std::string& name);
/// Quoted form is used whenever the plain form is not allowed.
ExportName make_export(const std::string& name);

struct Fragment;

struct Matcher {
  enum class Kind : std::uint8_t { literal, builtin, char_class, group, alternation, lookahead, array };
  Kind kind = Kind::literal;

  std::string text;  // literal
  BuiltinKind builtin = BuiltinKind::LD;
  std::string format;  // TIMESTAMP configuration; empty means the default format
  std::vector<std::pair<unsigned char, unsigned char>> ranges;  // char_class, in written order
  bool negated = false;                                          // char_class
  std::vector<Fragment> body;                                    // group, lookahead, array
  std::vector<std::vector<Fragment>> branches;                   // alternation

  CharSet char_set() const;  // char_class only
  bool operator==(const Matcher&) const;
};

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const SourceSpan&) const = default;
};

struct Fragment {
  Matcher matcher;
  std::optional<DplQuantifier> quantifier;
  std::optional<ExportName> export_name;
  /// Set on fragments produced by best-effort conversion.
  std::optional<std::string> unsafe_reason;
  /// Span of the regex text this fragment was converted from.
  std::optional<SourceSpan> origin_span;

  /// Compares matcher, quantifier and export only.
  bool same_shape(const Fragment& o) const;
  bool operator==(const Fragment& o) const = default;
};

struct DplPattern {
  std::vector<Fragment> fragments;
  bool operator==(const DplPattern&) const = default;
};

bool same_shape(const DplPattern& a, const DplPattern& b);
bool same_shape(const std::vector<Fragment>& a, const std::vector<Fragment>& b);

// Builders.
Fragment literal(std::string text);
Fragment builtin(BuiltinKind k, std::optional<DplQuantifier> q = std::nullopt);
Fragment timestamp(std::string format = {});
Fragment char_class(std::vector<std::pair<unsigned char, unsigned char>> ranges, bool negated);
Fragment group(std::vector<Fragment> body);
Fragment alternation(std::vector<std::vector<Fragment>> branches);
Fragment lookahead(Fragment body);
Fragment array(std::vector<Fragment> body, std::optional<DplQuantifier> q = std::nullopt);

/// Repetition bounds a matcher uses when no quantifier is written:
/// DIGIT/SPACE/NSPACE/WORD {1,4096}, LD/DATA {0,4096}, everything else {1}.
std::pair<std::size_t, std::size_t> default_bounds(const Matcher& m);

/// Bounds after applying the written quantifier. For the `?` marker, the
/// default bounds are returned and `optional` is set.
struct EffectiveBounds {
  std::size_t min;
  std::size_t max;
  bool optional;
};
EffectiveBounds effective_bounds(const Fragment& f);

/// Canonical text: fragments separated by single spaces, literals in double
/// quotes. Throws EmptyPattern when there are no fragments.
std::string serialize(const DplPattern& p);
std::string serialize(const Fragment& f);

/// Canonical text plus the [begin, end) range of every top-level fragment.
std::pair<std::string, std::vector<SourceSpan>> serialize_with_spans(const DplPattern& p);

/// Export names in depth-first order, including nested ones.
std::vector<std::string> export_names(const DplPattern& p);
void collect_exports(const std::vector<Fragment>& frags, std::vector<std::string>& out);

}  // namespace rx2dpl::dpl
