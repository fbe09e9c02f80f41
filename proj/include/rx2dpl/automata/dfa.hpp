#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rx2dpl/automata/alphabet.hpp"

namespace rx2dpl::automata {

/// Complete deterministic automaton over an alphabet partition.
class Dfa {
 public:
  Dfa(std::shared_ptr<const Alphabet> alphabet, std::size_t states, int start);

  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& alphabet_ptr() const { return alphabet_; }
  std::size_t state_count() const { return accepting_.size(); }
  int start() const { return start_; }

  int next(int state, std::size_t cls) const { return trans_[static_cast<std::size_t>(state) * alphabet_->size() + cls]; }
  void set_next(int state, std::size_t cls, int to) {
    trans_[static_cast<std::size_t>(state) * alphabet_->size() + cls] = to;
  }
  bool accepting(int state) const { return accepting_[static_cast<std::size_t>(state)]; }
  void set_accepting(int state, bool v) { accepting_[static_cast<std::size_t>(state)] = v; }

  /// Bytes outside the universe are rejected.
  bool accepts(std::string_view s) const;

  /// The same language expressed over a finer (or wider) alphabet. Classes
  /// outside this automaton's universe lead to a rejecting sink.
  Dfa over(std::shared_ptr<const Alphabet> finer) const;

  /// States reachable from start, renumbered in BFS order.
  Dfa trimmed() const;

  bool empty_language() const;
  /// Shortest accepted string (lexicographically smallest by class order).
  std::optional<std::string> shortest_accepted() const;

  std::string to_dot() const;

 private:
  std::shared_ptr<const Alphabet> alphabet_;
  int start_;
  std::vector<int> trans_;
  std::vector<bool> accepting_;
};

/// Product automaton; `both` selects intersection (true) or union (false).
Dfa product(const Dfa& a, const Dfa& b, bool both);

/// True iff L(a) and L(b) share a string.
bool intersects(const Dfa& a, const Dfa& b);

/// Strings over the alphabet's universe not in L(a).
Dfa complement(const Dfa& a);

}  // namespace rx2dpl::automata
