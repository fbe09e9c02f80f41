#pragma once

#include <bitset>
#include <cstddef>
#include <string>
#include <vector>

namespace rx2dpl {

/// Set of byte values. All matchers in the library operate on bytes.
class CharSet {
 public:
  CharSet() = default;

  static CharSet single(unsigned char c);
  static CharSet range(unsigned char lo, unsigned char hi);
  static CharSet all();
  static CharSet digit();
  static CharSet word();
  static CharSet space();
  /// Every byte except '\n'.
  static CharSet dot();

  CharSet& add(unsigned char c) {
    bits_.set(c);
    return *this;
  }
  CharSet& add_range(unsigned char lo, unsigned char hi);

  bool contains(unsigned char c) const { return bits_.test(c); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  CharSet operator|(const CharSet& o) const { return CharSet(bits_ | o.bits_); }
  CharSet operator&(const CharSet& o) const { return CharSet(bits_ & o.bits_); }
  CharSet operator~() const { return CharSet(~bits_); }
  CharSet minus(const CharSet& o) const { return CharSet(bits_ & ~o.bits_); }
  CharSet& operator|=(const CharSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  bool operator==(const CharSet& o) const { return bits_ == o.bits_; }
  bool intersects(const CharSet& o) const { return (bits_ & o.bits_).any(); }

  /// Members in ascending order.
  std::vector<unsigned char> members() const;
  /// Maximal runs [lo, hi] of consecutive members.
  std::vector<std::pair<unsigned char, unsigned char>> ranges() const;
  /// Smallest member; undefined on an empty set.
  unsigned char first() const;

  const std::bitset<256>& bits() const { return bits_; }

 private:
  explicit CharSet(std::bitset<256> b) : bits_(b) {}
  std::bitset<256> bits_;
};

/// Parses a class body such as `\t\n\r -~` (ranges, `\xHH`, `\t`, `\n`, `\r`,
/// `\\`, `\-`) into a set. Used for configurable alphabets.
CharSet parse_charset_spec(const std::string& spec);

}  // namespace rx2dpl
