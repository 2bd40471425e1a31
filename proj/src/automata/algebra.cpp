#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <unordered_map>

#include "builder.hpp"
#include "fibwalk/automata.hpp"

namespace fibwalk::automata {

namespace {

std::vector<char> live_states_of(const SyncDFA& a) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> preds(n);
  for (State s = 0; s < n; ++s)
    for (State t : a.row(s)) preds[t].push_back(s);
  std::vector<char> live(n, 0);
  std::deque<State> queue;
  for (State s = 0; s < n; ++s)
    if (a.accepting(s)) {
      live[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    State t = queue.front();
    queue.pop_front();
    for (State s : preds[t])
      if (!live[s]) {
        live[s] = 1;
        queue.push_back(s);
      }
  }
  return live;
}

struct SubsetHash {
  std::size_t operator()(const std::vector<State>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (State x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

SyncDFA raw_product(const SyncDFA& a, const SyncDFA& b, BoolOp op) {
  const std::size_t letters = a.alphabet_size();
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto key = [](State x, State y) { return (static_cast<std::uint64_t>(x) << 32) | y; };
  auto intern = [&](State x, State y) {
    auto [it, ins] = ids.emplace(key(x, y), static_cast<State>(pairs.size()));
    if (ins) pairs.emplace_back(x, y);
    return it->second;
  };
  // index 0 is always the (dead, dead) pair so that state 0 stays a sink
  intern(kDead, kDead);
  State init = intern(a.initial(), b.initial());
  std::vector<State> delta;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [x, y] = pairs[k];
    for (Letter l = 0; l < letters; ++l) delta.push_back(intern(a.next(x, l), b.next(y, l)));
  }
  SyncDFA out(a.arity(), pairs.size());
  out.set_initial(init);
  for (State s = 0; s < pairs.size(); ++s) {
    out.set_accepting(s, apply(op, a.accepting(pairs[s].first), b.accepting(pairs[s].second)));
    for (Letter l = 0; l < letters; ++l) out.set_next(s, l, delta[s * letters + l]);
  }
  return out;
}

}  // namespace

SyncDFA product(const SyncDFA& a, const SyncDFA& b, BoolOp op) {
  if (a.arity() != b.arity())
    throw AutomatonError("product: arity mismatch (" + std::to_string(a.arity()) + " vs " +
                         std::to_string(b.arity()) + ")");
  SyncDFA p = raw_product(a, b, op);
  if (apply(op, false, false)) {
    // the (dead, dead) pair accepts: cut back to canonical strings
    return minimize(raw_product(p, validity(a.arity()), BoolOp::And));
  }
  return minimize(p);
}

SyncDFA complement(const SyncDFA& a) { return product(validity(a.arity()), a, BoolOp::AndNot); }

SyncDFA project(const SyncDFA& a, int track) { return project(a, std::vector<int>{track}); }

namespace {

// Subset construction over the erased tracks. Gives up (nullopt) once more
// than `limit` subsets are interned.
std::optional<SyncDFA> project_subsets(const SyncDFA& a, const std::vector<int>& tracks, std::size_t limit) {
  const int new_arity = a.arity() - static_cast<int>(tracks.size());

  std::vector<int> keep;
  for (int t = 0; t < a.arity(); ++t)
    if (!std::binary_search(tracks.begin(), tracks.end(), t)) keep.push_back(t);

  const Letter reduced_letters = Letter{1} << new_arity;
  const Letter erased_combos = Letter{1} << tracks.size();
  std::vector<Letter> full(static_cast<std::size_t>(reduced_letters) * erased_combos);
  for (Letter lr = 0; lr < reduced_letters; ++lr)
    for (Letter ec = 0; ec < erased_combos; ++ec) {
      Letter l = 0;
      for (std::size_t i = 0; i < keep.size(); ++i)
        if ((lr >> i) & 1U) l |= Letter{1} << keep[i];
      for (std::size_t i = 0; i < tracks.size(); ++i)
        if ((ec >> i) & 1U) l |= Letter{1} << tracks[i];
      full[lr * erased_combos + ec] = l;
    }

  const std::vector<char> live = live_states_of(a);
  std::vector<std::uint32_t> stamp(a.num_states(), 0);
  std::uint32_t epoch = 0;

  // leading-zero closure: a witness may be longer than every kept value
  std::vector<State> init;
  if (live[a.initial()]) {
    ++epoch;
    std::deque<State> queue{a.initial()};
    stamp[a.initial()] = epoch;
    while (!queue.empty()) {
      State s = queue.front();
      queue.pop_front();
      init.push_back(s);
      for (Letter ec = 0; ec < erased_combos; ++ec) {
        State t = a.next(s, full[ec]);
        if (live[t] && stamp[t] != epoch) {
          stamp[t] = epoch;
          queue.push_back(t);
        }
      }
    }
    std::sort(init.begin(), init.end());
  }

  std::unordered_map<std::vector<State>, State, SubsetHash> ids;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State>&& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    auto id = static_cast<State>(subsets.size());
    ids.emplace(s, id);
    subsets.push_back(std::move(s));
    return id;
  };
  intern({});  // empty subset = dead sink, index 0
  State init_id = intern(std::move(init));

  std::vector<State> delta;
  std::vector<State> succ;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    for (Letter lr = 0; lr < reduced_letters; ++lr) {
      ++epoch;
      succ.clear();
      for (State s : subsets[k]) {
        for (Letter ec = 0; ec < erased_combos; ++ec) {
          State t = a.next(s, full[lr * erased_combos + ec]);
          if (live[t] && stamp[t] != epoch) {
            stamp[t] = epoch;
            succ.push_back(t);
          }
        }
      }
      std::sort(succ.begin(), succ.end());
      delta.push_back(intern(std::vector<State>(succ)));
    }
    if (subsets.size() > limit) return std::nullopt;
  }

  SyncDFA out(new_arity, subsets.size());
  out.set_initial(init_id);
  for (State s = 0; s < subsets.size(); ++s) {
    bool acc = std::any_of(subsets[s].begin(), subsets[s].end(), [&](State x) { return a.accepting(x); });
    out.set_accepting(s, acc);
    for (Letter lr = 0; lr < reduced_letters; ++lr) out.set_next(s, lr, delta[s * reduced_letters + lr]);
  }
  return minimize(out);
}

}  // namespace

SyncDFA project(const SyncDFA& a, std::vector<int> tracks) {
  std::sort(tracks.begin(), tracks.end());
  tracks.erase(std::unique(tracks.begin(), tracks.end()), tracks.end());
  for (int t : tracks)
    if (t < 0 || t >= a.arity()) throw AutomatonError("project: track " + std::to_string(t) + " out of range");
  if (tracks.empty()) return minimize(a);
  if (a.arity() == static_cast<int>(tracks.size())) return constant(!is_empty(a));
  if (tracks.size() == 1) return *project_subsets(a, tracks, std::numeric_limits<std::size_t>::max());

  // Intermediate determinizations can explode for one elimination order and
  // stay tiny for another, so erase one track at a time under a growing
  // subset budget and keep the smallest result.
  SyncDFA cur = minimize(a);
  std::size_t budget = 64 * (cur.num_states() + 16);
  while (!tracks.empty()) {
    if (static_cast<int>(tracks.size()) == cur.arity()) return constant(!is_empty(cur));
    std::optional<SyncDFA> best;
    std::size_t best_at = 0;
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      auto r = project_subsets(cur, {tracks[k]}, budget);
      if (r && (!best || r->num_states() < best->num_states())) {
        best = std::move(r);
        best_at = k;
      }
    }
    if (!best) {
      budget *= 8;
      continue;
    }
    cur = std::move(*best);
    tracks.erase(tracks.begin() + static_cast<std::ptrdiff_t>(best_at));
    for (std::size_t k = best_at; k < tracks.size(); ++k) --tracks[k];
  }
  return cur;
}

SyncDFA remap(const SyncDFA& a, std::span<const int> target_of, int new_arity) {
  if (static_cast<int>(target_of.size()) != a.arity()) throw AutomatonError("remap: map size differs from arity");
  if (new_arity < 0 || new_arity > kMaxArity) throw AutomatonError("remap: arity out of range");
  Letter hit = 0;
  for (int t : target_of) {
    if (t < 0 || t >= new_arity) throw AutomatonError("remap: target track out of range");
    hit |= Letter{1} << t;
  }
  const Letter free_mask = ((Letter{1} << new_arity) - 1) & ~hit;
  const Letter letters = Letter{1} << new_arity;
  std::vector<Letter> source(letters);
  for (Letter l = 0; l < letters; ++l) {
    Letter src = 0;
    for (std::size_t t = 0; t < target_of.size(); ++t)
      if ((l >> target_of[t]) & 1U) src |= Letter{1} << t;
    source[l] = src;
  }
  // key: (state of a, previous digits on the unconstrained tracks)
  using Key = std::pair<State, Letter>;
  return minimize(detail::build_reachable(
      new_arity, Key{a.initial(), 0},
      [&](const Key& k, Letter l) -> std::optional<Key> {
        Letter fresh = l & free_mask;
        if (fresh & k.second) return std::nullopt;
        State t = a.next(k.first, source[l]);
        if (t == kDead) return std::nullopt;
        return Key{t, fresh};
      },
      [&](const Key& k) { return a.accepting(k.first); }));
}

}  // namespace fibwalk::automata
