#include "rx2dpl/dpl/builtins.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <vector>

namespace rx2dpl::dpl {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

std::size_t digit_run(std::string_view in, std::size_t pos) {
  std::size_t i = pos;
  while (i < in.size() && is_digit(in[i])) ++i;
  return i - pos;
}

std::optional<std::size_t> match_integer(std::string_view in, std::size_t pos, bool wide) {
  std::size_t i = pos;
  if (i < in.size() && (in[i] == '+' || in[i] == '-')) ++i;
  std::size_t d = digit_run(in, i);
  if (d == 0) return std::nullopt;
  std::size_t end = i + d;
  std::string_view tok = in.substr(pos, end - pos);
  if (tok.front() == '+') tok.remove_prefix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  if (!wide && (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max()))
    return std::nullopt;
  return end;
}

std::optional<std::size_t> match_double(std::string_view in, std::size_t pos) {
  std::size_t i = pos;
  if (i < in.size() && (in[i] == '+' || in[i] == '-')) ++i;
  std::size_t whole = digit_run(in, i);
  i += whole;
  std::size_t frac = 0;
  if (i < in.size() && in[i] == '.') {
    frac = digit_run(in, i + 1);
    if (whole > 0 || frac > 0) i += 1 + frac;
  }
  if (whole == 0 && frac == 0) return std::nullopt;
  if (i < in.size() && (in[i] == 'e' || in[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < in.size() && (in[j] == '+' || in[j] == '-')) ++j;
    std::size_t e = digit_run(in, j);
    if (e > 0) i = j + e;
  }
  return i;
}

std::optional<std::size_t> match_ipv4(std::string_view in, std::size_t pos) {
  std::size_t i = pos;
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (i >= in.size() || in[i] != '.') return std::nullopt;
      ++i;
    }
    std::size_t d = digit_run(in, i);
    if (d == 0 || d > 3) return std::nullopt;
    int v = 0;
    for (std::size_t k = 0; k < d; ++k) v = v * 10 + (in[i + k] - '0');
    if (v > 255) return std::nullopt;
    i += d;
  }
  return i;
}

std::optional<std::size_t> match_ipv6(std::string_view in, std::size_t pos) {
  // Longest prefix that forms a valid address; addresses are at most 45 bytes.
  std::size_t limit = std::min(in.size(), pos + 45);
  for (std::size_t end = limit; end >= pos + 2; --end)
    if (is_ipv6(in.substr(pos, end - pos))) return end;
  return std::nullopt;
}

struct TsToken {
  char kind;  // 'y','M','d','H','m','s','S' or 0 for a literal byte
  std::size_t width;
  char literal;
};

std::vector<TsToken> tokenize_format(const std::string& fmt) {
  std::vector<TsToken> out;
  std::size_t i = 0;
  while (i < fmt.size()) {
    auto starts = [&](const char* t) { return fmt.compare(i, std::char_traits<char>::length(t), t) == 0; };
    if (starts("yyyy")) out.push_back({'y', 4, 0}), i += 4;
    else if (starts("SSS")) out.push_back({'S', 3, 0}), i += 3;
    else if (starts("MM")) out.push_back({'M', 2, 0}), i += 2;
    else if (starts("dd")) out.push_back({'d', 2, 0}), i += 2;
    else if (starts("HH")) out.push_back({'H', 2, 0}), i += 2;
    else if (starts("mm")) out.push_back({'m', 2, 0}), i += 2;
    else if (starts("ss")) out.push_back({'s', 2, 0}), i += 2;
    else out.push_back({0, 1, fmt[i]}), ++i;
  }
  return out;
}

bool leap(long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(long y, int m) {
  static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : d[m - 1];
}

// Days since 1970-01-01 of a proleptic Gregorian date.
long days_from_civil(long y, int m, int d) {
  y -= m <= 2;
  long era = (y >= 0 ? y : y - 399) / 400;
  long yoe = y - era * 400;
  long doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

struct TsParse {
  std::size_t end;
  long year = 1970;
  int month = 1, day = 1, hour = 0, minute = 0, second = 0, millis = 0;
  bool has_millis = false;
};

std::optional<TsParse> parse_timestamp(std::string_view in, std::size_t pos, const std::string& format) {
  const std::string& fmt = format.empty() ? std::string(kDefaultTimestampFormat) : format;
  TsParse r{pos};
  std::size_t i = pos;
  for (const TsToken& t : tokenize_format(fmt)) {
    if (t.kind == 0) {
      if (i >= in.size() || in[i] != t.literal) return std::nullopt;
      ++i;
      continue;
    }
    if (i + t.width > in.size()) return std::nullopt;
    int v = 0;
    for (std::size_t k = 0; k < t.width; ++k) {
      if (!is_digit(in[i + k])) return std::nullopt;
      v = v * 10 + (in[i + k] - '0');
    }
    i += t.width;
    switch (t.kind) {
      case 'y': r.year = v; break;
      case 'M': r.month = v; break;
      case 'd': r.day = v; break;
      case 'H': r.hour = v; break;
      case 'm': r.minute = v; break;
      case 's': r.second = v; break;
      case 'S': r.millis = v, r.has_millis = true; break;
    }
  }
  if (r.month < 1 || r.month > 12) return std::nullopt;
  if (r.day < 1 || r.day > days_in_month(r.year, r.month)) return std::nullopt;
  if (r.hour > 23 || r.minute > 59 || r.second > 59) return std::nullopt;
  r.end = i;
  return r;
}

}  // namespace

CharSet builtin_char_set(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::LD: return CharSet::dot();
    case BuiltinKind::DATA: return CharSet::all();
    case BuiltinKind::DIGIT: return CharSet::digit();
    case BuiltinKind::SPACE: return CharSet::space();
    case BuiltinKind::NSPACE: return ~CharSet::space();
    case BuiltinKind::WORD: return CharSet::word();
    case BuiltinKind::LF: return CharSet::single('\n');
    default: return {};
  }
}

bool is_char_builtin(BuiltinKind k) {
  switch (k) {
    case BuiltinKind::LD:
    case BuiltinKind::DATA:
    case BuiltinKind::DIGIT:
    case BuiltinKind::SPACE:
    case BuiltinKind::NSPACE:
    case BuiltinKind::WORD:
    case BuiltinKind::LF: return true;
    default: return false;
  }
}

bool is_ipv4(std::string_view s) {
  auto e = match_ipv4(s, 0);
  return e && *e == s.size();
}

bool is_ipv6(std::string_view s) {
  // Split on ':' keeping track of a single "::" elision and an optional
  // trailing dotted quad, which counts as two groups.
  if (s.size() < 2) return false;
  std::size_t groups = 0;
  bool elided = false;
  std::size_t i = 0;
  if (s.substr(0, 2) == "::") {
    elided = true;
    i = 2;
    if (i == s.size()) return true;
  } else if (s[0] == ':') {
    return false;
  }
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && is_hex(s[j]) && j - i < 5) ++j;
    if (j < s.size() && s[j] == '.') {
      if (!is_ipv4(s.substr(i))) return false;
      groups += 2;
      i = s.size();
      break;
    }
    std::size_t len = j - i;
    if (len == 0 || len > 4) return false;
    ++groups;
    if (j == s.size()) {
      i = j;
      break;
    }
    if (s[j] != ':') return false;
    if (j + 1 < s.size() && s[j + 1] == ':') {
      if (elided) return false;
      elided = true;
      i = j + 2;
      if (i == s.size()) break;
    } else {
      i = j + 1;
      if (i == s.size()) return false;
    }
  }
  return elided ? groups <= 7 : groups == 8;
}

std::string check_timestamp_format(const std::string& format) {
  bool any = false;
  for (const auto& t : tokenize_format(format)) any |= t.kind != 0;
  if (!any) return "timestamp format contains no date or time fields";
  return {};
}

std::optional<std::size_t> match_typed(BuiltinKind k, std::string_view in, std::size_t pos, const std::string& format) {
  switch (k) {
    case BuiltinKind::INT: return match_integer(in, pos, false);
    case BuiltinKind::LONG: return match_integer(in, pos, true);
    case BuiltinKind::DOUBLE: return match_double(in, pos);
    case BuiltinKind::IPV4: return match_ipv4(in, pos);
    case BuiltinKind::IPADDR: {
      auto a = match_ipv4(in, pos);
      auto b = match_ipv6(in, pos);
      if (a && b) return std::max(*a, *b);
      return a ? a : b;
    }
    case BuiltinKind::TIMESTAMP: {
      auto t = parse_timestamp(in, pos, format);
      if (!t) return std::nullopt;
      return t->end;
    }
    default: return std::nullopt;
  }
}

bool builtin_accepts(BuiltinKind k, std::string_view text, const std::string& format) {
  if (is_char_builtin(k)) {
    CharSet s = builtin_char_set(k);
    auto [lo, hi] = default_bounds(builtin(k).matcher);
    if (text.size() < lo || text.size() > hi) return false;
    for (unsigned char c : text)
      if (!s.contains(c)) return false;
    return true;
  }
  if (k == BuiltinKind::BOS || k == BuiltinKind::EOS) return text.empty();
  auto e = match_typed(k, text, 0, format);
  return e && *e == text.size();
}

std::optional<nlohmann::json> typed_value(BuiltinKind k, std::string_view text, const std::string& format) {
  if (!is_typed(k) || !builtin_accepts(k, text, format)) return std::nullopt;
  switch (k) {
    case BuiltinKind::INT:
    case BuiltinKind::LONG: {
      std::string_view t = text;
      if (t.front() == '+') t.remove_prefix(1);
      std::int64_t v = 0;
      std::from_chars(t.data(), t.data() + t.size(), v);
      return nlohmann::json(v);
    }
    case BuiltinKind::DOUBLE: return nlohmann::json(std::stod(std::string(text)));
    case BuiltinKind::IPV4:
    case BuiltinKind::IPADDR: return nlohmann::json(std::string(text));
    case BuiltinKind::TIMESTAMP: {
      auto t = parse_timestamp(text, 0, format);
      long secs = days_from_civil(t->year, t->month, t->day) * 86400L + t->hour * 3600L + t->minute * 60L + t->second;
      if (t->has_millis) return nlohmann::json(static_cast<double>(secs) + t->millis / 1000.0);
      return nlohmann::json(secs);
    }
    default: return std::nullopt;
  }
}

}  // namespace rx2dpl::dpl
