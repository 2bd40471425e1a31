#include <algorithm>

#include "fibwalk/automata.hpp"
#include "fibwalk/numeration.hpp"

namespace fibwalk::automata {

namespace {

// Depth-first walk over all padded words of `limit_rep.size()` letters whose
// components are each <= limit (per-track tightness against limit's digits).
struct BoundedWalk {
  const SyncDFA& a;
  const std::string& limit_rep;
  std::vector<Letter> word;
  std::vector<std::vector<std::uint64_t>> out;

  void go(State s, std::size_t pos, Letter tight) {
    if (s == kDead) return;
    if (pos == limit_rep.size()) {
      if (a.accepting(s)) out.push_back(decode_tuple(word, a.arity()));
      return;
    }
    const bool limit_digit = limit_rep[pos] == '1';
    for (Letter l = 0; l < a.alphabet_size(); ++l) {
      Letter next_tight = tight;
      bool ok = true;
      for (int t = 0; t < a.arity(); ++t) {
        Letter bit = Letter{1} << t;
        if (!(tight & bit)) continue;
        bool d = (l & bit) != 0;
        if (d && !limit_digit) {
          ok = false;
          break;
        }
        if (!d && limit_digit) next_tight &= ~bit;
      }
      if (!ok) continue;
      word.push_back(l);
      go(a.next(s, l), pos + 1, next_tight);
      word.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<std::uint64_t>> enumerate_tuples(const SyncDFA& a, std::uint64_t limit) {
  const std::string rep = zeck_encode(limit);
  BoundedWalk walk{a, rep, {}, {}};
  walk.go(a.initial(), 0, static_cast<Letter>(a.alphabet_size() - 1));
  std::sort(walk.out.begin(), walk.out.end());
  return walk.out;
}

std::vector<std::uint64_t> enumerate(const SyncDFA& a, std::uint64_t limit) {
  if (a.arity() != 1) throw AutomatonError("enumerate: expected arity 1, got " + std::to_string(a.arity()));
  std::vector<std::uint64_t> values;
  for (auto& t : enumerate_tuples(a, limit)) values.push_back(t[0]);
  return values;
}

std::vector<std::vector<std::uint64_t>> first_accepted(const SyncDFA& a, std::size_t count,
                                                       std::size_t max_length) {
  std::vector<std::vector<std::uint64_t>> out;
  if (count == 0) return out;
  if (a.accepting(a.initial())) out.push_back(std::vector<std::uint64_t>(static_cast<std::size_t>(a.arity()), 0));
  if (a.arity() == 0) return out;

  // can_finish[r][s]: some word of exactly r letters leads from s to acceptance
  const std::size_t n = a.num_states();
  std::vector<std::vector<char>> can_finish(1, std::vector<char>(n, 0));
  for (State s = 0; s < n; ++s) can_finish[0][s] = a.accepting(s) ? 1 : 0;

  std::vector<Letter> word;
  for (std::size_t len = 1; len <= max_length && out.size() < count; ++len) {
    std::vector<char> next(n, 0);
    for (State s = 0; s < n; ++s)
      for (State t : a.row(s))
        if (can_finish[len - 1][t]) {
          next[s] = 1;
          break;
        }
    can_finish.push_back(std::move(next));

    // lexicographic DFS; the first letter must be nonzero (canonical padding)
    auto dfs = [&](auto&& self, State s, std::size_t remaining) -> void {
      if (out.size() >= count) return;
      if (remaining == 0) {
        out.push_back(decode_tuple(word, a.arity()));
        return;
      }
      for (Letter l = (word.empty() ? 1 : 0); l < a.alphabet_size(); ++l) {
        State t = a.next(s, l);
        if (!can_finish[remaining - 1][t]) continue;
        word.push_back(l);
        self(self, t, remaining - 1);
        word.pop_back();
        if (out.size() >= count) return;
      }
    };
    if (can_finish[len][a.initial()]) dfs(dfs, a.initial(), len);
  }
  return out;
}

}  // namespace fibwalk::automata
