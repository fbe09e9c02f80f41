#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rx2dpl/charset.hpp"
#include "rx2dpl/dpl/pattern.hpp"

namespace rx2dpl::dpl {

/// Single-character builtins (LD, DATA, DIGIT, SPACE, NSPACE, WORD, LF):
/// the bytes one repetition consumes. Empty for the others.
CharSet builtin_char_set(BuiltinKind k);
bool is_char_builtin(BuiltinKind k);

/// For typed builtins: end of the longest token starting at `pos`, or
/// nullopt. INT/LONG take the maximal `[+-]?[0-9]+` run and fail when it does
/// not fit 32/64 bits; IPv4 octets take maximal digit runs (at most three,
/// value <= 255); IPADDR takes the longer of an IPv4 and an IPv6 reading.
std::optional<std::size_t> match_typed(BuiltinKind k, std::string_view in, std::size_t pos, const std::string& format = {});

/// True iff the whole text is one token of the matcher.
bool builtin_accepts(BuiltinKind k, std::string_view text, const std::string& format = {});

/// Typed value of a complete token: integer for INT/LONG, number for DOUBLE,
/// epoch seconds for TIMESTAMP (fractional with SSS), canonical text for
/// addresses. nullopt when the text is not a token.
std::optional<nlohmann::json> typed_value(BuiltinKind k, std::string_view text, const std::string& format = {});

bool is_ipv4(std::string_view s);
bool is_ipv6(std::string_view s);

/// Checks a TIMESTAMP format string; returns an error message or empty.
std::string check_timestamp_format(const std::string& format);

}  // namespace rx2dpl::dpl
