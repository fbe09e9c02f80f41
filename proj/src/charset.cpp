#include "rx2dpl/charset.hpp"

#include "rx2dpl/error.hpp"

namespace rx2dpl {

CharSet CharSet::single(unsigned char c) { return CharSet().add(c); }

CharSet CharSet::range(unsigned char lo, unsigned char hi) { return CharSet().add_range(lo, hi); }

CharSet CharSet::all() {
  CharSet s;
  s.bits_.set();
  return s;
}

CharSet CharSet::digit() { return range('0', '9'); }

CharSet CharSet::word() {
  return range('a', 'z') | range('A', 'Z') | range('0', '9') | single('_');
}

CharSet CharSet::space() {
  // \t \n \v \f \r and ' '
  return range(9, 13) | single(' ');
}

CharSet CharSet::dot() {
  CharSet s = all();
  s.bits_.reset('\n');
  return s;
}

CharSet& CharSet::add_range(unsigned char lo, unsigned char hi) {
  for (unsigned c = lo; c <= hi; ++c) bits_.set(c);
  return *this;
}

std::vector<unsigned char> CharSet::members() const {
  std::vector<unsigned char> out;
  for (unsigned c = 0; c < 256; ++c)
    if (bits_.test(c)) out.push_back(static_cast<unsigned char>(c));
  return out;
}

std::vector<std::pair<unsigned char, unsigned char>> CharSet::ranges() const {
  std::vector<std::pair<unsigned char, unsigned char>> out;
  unsigned c = 0;
  while (c < 256) {
    if (!bits_.test(c)) {
      ++c;
      continue;
    }
    unsigned lo = c;
    while (c + 1 < 256 && bits_.test(c + 1)) ++c;
    out.emplace_back(static_cast<unsigned char>(lo), static_cast<unsigned char>(c));
    ++c;
  }
  return out;
}

unsigned char CharSet::first() const {
  for (unsigned c = 0; c < 256; ++c)
    if (bits_.test(c)) return static_cast<unsigned char>(c);
  return 0;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

CharSet parse_charset_spec(const std::string& spec) {
  CharSet out;
  std::size_t i = 0;
  auto next_char = [&]() -> unsigned char {
    char c = spec[i++];
    if (c != '\\') return static_cast<unsigned char>(c);
    if (i >= spec.size()) throw SyntaxError(i, "dangling backslash in alphabet");
    char e = spec[i++];
    switch (e) {
      case 't': return '\t';
      case 'n': return '\n';
      case 'r': return '\r';
      case 'f': return '\f';
      case 'v': return '\v';
      case 'x': {
        if (i + 2 > spec.size()) throw SyntaxError(i, "truncated \\x escape");
        int h = hex_value(spec[i]), l = hex_value(spec[i + 1]);
        if (h < 0 || l < 0) throw SyntaxError(i, "bad \\x escape");
        i += 2;
        return static_cast<unsigned char>(h * 16 + l);
      }
      default: return static_cast<unsigned char>(e);
    }
  };
  while (i < spec.size()) {
    unsigned char lo = next_char();
    if (i + 1 < spec.size() && spec[i] == '-') {
      ++i;
      unsigned char hi = next_char();
      if (hi < lo) throw SyntaxError(i, "reversed range in alphabet");
      out.add_range(lo, hi);
    } else {
      out.add(lo);
    }
  }
  return out;
}

}  // namespace rx2dpl
