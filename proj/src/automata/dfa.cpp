#include "rx2dpl/automata/dfa.hpp"

#include <cstdio>
#include <deque>
#include <map>

namespace rx2dpl::automata {

Dfa::Dfa(std::shared_ptr<const Alphabet> alphabet, std::size_t states, int start)
    : alphabet_(std::move(alphabet)), start_(start), trans_(states * alphabet_->size(), 0), accepting_(states, false) {}

bool Dfa::accepts(std::string_view s) const {
  int q = start_;
  for (unsigned char c : s) {
    int cls = alphabet_->class_of(c);
    if (cls < 0) return false;
    q = next(q, static_cast<std::size_t>(cls));
  }
  return accepting(q);
}

Dfa Dfa::over(std::shared_ptr<const Alphabet> finer) const {
  std::size_t n = state_count();
  Dfa out(finer, n + 1, start_);
  int sink = static_cast<int>(n);
  for (std::size_t k = 0; k < finer->size(); ++k) {
    int old = alphabet_->class_of(finer->cls(k).first());
    for (std::size_t q = 0; q <= n; ++q) {
      int to = (q == n || old < 0) ? sink : next(static_cast<int>(q), static_cast<std::size_t>(old));
      out.set_next(static_cast<int>(q), k, to);
    }
  }
  for (std::size_t q = 0; q < n; ++q) out.set_accepting(static_cast<int>(q), accepting(static_cast<int>(q)));
  return out.trimmed();
}

Dfa Dfa::trimmed() const {
  std::vector<int> id(state_count(), -1);
  std::vector<int> order;
  std::deque<int> work{start_};
  id[static_cast<std::size_t>(start_)] = 0;
  order.push_back(start_);
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (std::size_t k = 0; k < alphabet_->size(); ++k) {
      int t = next(q, k);
      if (id[static_cast<std::size_t>(t)] < 0) {
        id[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
        work.push_back(t);
      }
    }
  }
  Dfa out(alphabet_, order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.set_accepting(static_cast<int>(i), accepting(order[i]));
    for (std::size_t k = 0; k < alphabet_->size(); ++k)
      out.set_next(static_cast<int>(i), k, id[static_cast<std::size_t>(next(order[i], k))]);
  }
  return out;
}

bool Dfa::empty_language() const { return !shortest_accepted().has_value(); }

std::optional<std::string> Dfa::shortest_accepted() const {
  std::vector<int> parent(state_count(), -2);
  std::vector<unsigned char> via(state_count(), 0);
  std::deque<int> work{start_};
  parent[static_cast<std::size_t>(start_)] = -1;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    if (accepting(q)) {
      std::string s;
      for (int p = q; parent[static_cast<std::size_t>(p)] != -1; p = parent[static_cast<std::size_t>(p)])
        s.insert(s.begin(), static_cast<char>(via[static_cast<std::size_t>(p)]));
      return s;
    }
    for (std::size_t k = 0; k < alphabet_->size(); ++k) {
      int t = next(q, k);
      if (parent[static_cast<std::size_t>(t)] == -2) {
        parent[static_cast<std::size_t>(t)] = q;
        via[static_cast<std::size_t>(t)] = alphabet_->cls(k).first();
        work.push_back(t);
      }
    }
  }
  return std::nullopt;
}

namespace {

std::string class_label(const CharSet& s) {
  std::string out;
  auto put = [&](unsigned char c) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += static_cast<char>(c);
    } else if (c < 0x20 || c >= 0x7F) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\\\x%02X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  };
  for (auto [lo, hi] : s.ranges()) {
    put(lo);
    if (hi != lo) {
      out += '-';
      put(hi);
    }
  }
  return "[" + out + "]";
}

}  // namespace

std::string Dfa::to_dot() const {
  std::string out = "digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t q = 0; q < state_count(); ++q)
    out += "  q" + std::to_string(q) + (accepting(static_cast<int>(q)) ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  out += "  init -> q" + std::to_string(start_) + ";\n";
  for (std::size_t q = 0; q < state_count(); ++q) {
    std::map<int, CharSet> edges;
    for (std::size_t k = 0; k < alphabet_->size(); ++k) edges[next(static_cast<int>(q), k)] |= alphabet_->cls(k);
    for (const auto& [to, set] : edges)
      out += "  q" + std::to_string(q) + " -> q" + std::to_string(to) + " [label=\"" + class_label(set) + "\"];\n";
  }
  out += "}\n";
  return out;
}

namespace {

std::pair<Dfa, Dfa> aligned(const Dfa& a, const Dfa& b) {
  if (a.alphabet() == b.alphabet()) return {a, b};
  auto common = Alphabet::refine(a.alphabet(), b.alphabet());
  return {a.over(common), b.over(common)};
}

}  // namespace

Dfa product(const Dfa& a0, const Dfa& b0, bool both) {
  auto [a, b] = aligned(a0, b0);
  std::size_t nb = b.state_count();
  std::size_t k = a.alphabet().size();
  std::map<std::size_t, int> id;
  std::vector<std::pair<int, int>> order;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = id.emplace(static_cast<std::size_t>(p) * nb + static_cast<std::size_t>(q), static_cast<int>(order.size()));
    if (fresh) order.emplace_back(p, q);
    return it->second;
  };
  intern(a.start(), b.start());
  std::vector<int> trans;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [p, q] = order[i];
    for (std::size_t c = 0; c < k; ++c) trans.push_back(intern(a.next(p, c), b.next(q, c)));
  }
  Dfa out(a.alphabet_ptr(), order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    bool acc_a = a.accepting(order[i].first);
    bool acc_b = b.accepting(order[i].second);
    out.set_accepting(static_cast<int>(i), both ? (acc_a && acc_b) : (acc_a || acc_b));
    for (std::size_t c = 0; c < k; ++c) out.set_next(static_cast<int>(i), c, trans[i * k + c]);
  }
  return out;
}

bool intersects(const Dfa& a0, const Dfa& b0) {
  auto [a, b] = aligned(a0, b0);
  // On-the-fly product so that only reachable pairs are visited.
  std::size_t nb = b.state_count();
  std::vector<bool> seen(a.state_count() * nb, false);
  std::deque<std::pair<int, int>> work{{a.start(), b.start()}};
  seen[static_cast<std::size_t>(a.start()) * nb + static_cast<std::size_t>(b.start())] = true;
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    if (a.accepting(p) && b.accepting(q)) return true;
    for (std::size_t c = 0; c < a.alphabet().size(); ++c) {
      int np = a.next(p, c);
      int nq = b.next(q, c);
      std::size_t key = static_cast<std::size_t>(np) * nb + static_cast<std::size_t>(nq);
      if (!seen[key]) {
        seen[key] = true;
        work.emplace_back(np, nq);
      }
    }
  }
  return false;
}

Dfa complement(const Dfa& a) {
  Dfa out = a;
  for (std::size_t q = 0; q < a.state_count(); ++q) out.set_accepting(static_cast<int>(q), !a.accepting(static_cast<int>(q)));
  return out;
}

}  // namespace rx2dpl::automata
