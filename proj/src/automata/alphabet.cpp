#include "rx2dpl/automata/alphabet.hpp"

#include <map>

namespace rx2dpl::automata {

CharSet default_universe() {
  CharSet u = CharSet::range(0x20, 0x7E);
  u.add('\t').add('\n').add('\r');
  return u;
}

std::shared_ptr<const Alphabet> Alphabet::build(const CharSet& universe, const std::vector<CharSet>& sets) {
  auto a = std::make_shared<Alphabet>();
  a->universe_ = universe;
  a->class_of_.fill(-1);
  // Bytes are visited in ascending order, so classes come out ordered by
  // their smallest member regardless of the order of `sets`.
  std::map<std::vector<bool>, int> index;
  for (unsigned char c : universe.members()) {
    std::vector<bool> key(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) key[i] = sets[i].contains(c);
    auto [it, fresh] = index.emplace(std::move(key), static_cast<int>(a->classes_.size()));
    if (fresh) a->classes_.emplace_back();
    a->classes_[static_cast<std::size_t>(it->second)].add(c);
    a->class_of_[c] = it->second;
  }
  return a;
}

std::shared_ptr<const Alphabet> Alphabet::refine(const Alphabet& x, const Alphabet& y) {
  std::vector<CharSet> sets;
  for (std::size_t i = 0; i < x.size(); ++i) sets.push_back(x.cls(i));
  for (std::size_t i = 0; i < y.size(); ++i) sets.push_back(y.cls(i));
  return build(x.universe() | y.universe(), sets);
}

}  // namespace rx2dpl::automata
