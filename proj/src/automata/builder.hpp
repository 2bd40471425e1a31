#pragma once

#include <deque>
#include <map>
#include <optional>

#include "fibwalk/automata.hpp"

namespace fibwalk::automata::detail {

// Explores the states reachable from `start`. `step(key, letter)` returns the
// successor key or nullopt for the dead sink; `accept(key)` marks final
// states. The result is not minimized.
template <class Key, class Step, class Accept>
SyncDFA build_reachable(int arity, const Key& start, Step step, Accept accept) {
  if (arity < 0 || arity > kMaxArity) throw AutomatonError("arity out of range");
  const Letter letters = Letter{1} << arity;
  std::map<Key, State> ids;
  std::deque<Key> queue;
  std::vector<std::vector<State>> rows;
  std::vector<bool> acc;

  rows.emplace_back(letters, kDead);
  acc.push_back(false);
  ids.emplace(start, 1);
  queue.push_back(start);
  rows.emplace_back(letters, kDead);
  acc.push_back(accept(start));

  State current = 1;
  while (!queue.empty()) {
    Key key = queue.front();
    queue.pop_front();
    for (Letter l = 0; l < letters; ++l) {
      std::optional<Key> succ = step(key, l);
      if (!succ) continue;
      auto [it, inserted] = ids.emplace(*succ, static_cast<State>(rows.size()));
      if (inserted) {
        rows.emplace_back(letters, kDead);
        acc.push_back(accept(*succ));
        queue.push_back(*succ);
      }
      rows[current][l] = it->second;
    }
    ++current;
  }

  SyncDFA out(arity, rows.size());
  for (State s = 0; s < rows.size(); ++s) {
    out.set_accepting(s, acc[s]);
    for (Letter l = 0; l < letters; ++l) out.set_next(s, l, rows[s][l]);
  }
  out.set_initial(1);
  return out;
}

}  // namespace fibwalk::automata::detail
