#pragma once

#include <array>
#include <memory>
#include <vector>

#include "rx2dpl/charset.hpp"

namespace rx2dpl::automata {

/// Printable ASCII plus tab, newline and carriage return.
CharSet default_universe();

/// Partition of a universe of bytes into disjoint classes. Bytes in the same
/// class are indistinguishable by every set the partition was built from.
class Alphabet {
 public:
  /// Minimal partition of `universe` that refines every set in `sets`.
  static std::shared_ptr<const Alphabet> build(const CharSet& universe, const std::vector<CharSet>& sets);
  /// Common refinement of two partitions over the same universe.
  static std::shared_ptr<const Alphabet> refine(const Alphabet& a, const Alphabet& b);

  std::size_t size() const { return classes_.size(); }
  const CharSet& universe() const { return universe_; }
  const CharSet& cls(std::size_t i) const { return classes_[i]; }
  /// Class index of byte `c`, or -1 when `c` lies outside the universe.
  int class_of(unsigned char c) const { return class_of_[c]; }

  bool operator==(const Alphabet& o) const { return universe_ == o.universe_ && classes_ == o.classes_; }

 private:
  CharSet universe_;
  std::vector<CharSet> classes_;
  std::array<int, 256> class_of_{};
};

}  // namespace rx2dpl::automata
