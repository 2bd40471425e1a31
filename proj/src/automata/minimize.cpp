#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "fibwalk/automata.hpp"

namespace fibwalk::automata {

namespace {

std::vector<State> reachable_states(const SyncDFA& a) {
  std::vector<char> seen(a.num_states(), 0);
  std::vector<State> order;
  std::deque<State> queue{a.initial()};
  seen[a.initial()] = 1;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (State t : a.row(s))
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
  }
  return order;
}

// States (of `a`) from which some accepting state is reachable.
std::vector<char> coreachable(const SyncDFA& a) {
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

// Quotient of `a` by the class map (over reachable states), numbered
// canonically: the class without accepting continuations becomes 0 (added if
// absent), the rest in BFS order from the initial class, letters ascending.
SyncDFA canonical_quotient(const SyncDFA& a, const std::vector<State>& reach,
                           const std::vector<std::uint32_t>& cls, std::uint32_t num_classes) {
  const std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<State> rep(num_classes, kNone);
  for (State s : reach)
    if (rep[cls[s]] == kNone) rep[cls[s]] = s;

  // A class is dead iff its representative cannot reach acceptance; in a
  // minimal automaton there is at most one.
  std::vector<char> live = coreachable(a);
  std::uint32_t dead_class = kNone;
  for (std::uint32_t c = 0; c < num_classes; ++c)
    if (!live[rep[c]]) dead_class = c;

  std::vector<State> id(num_classes, kNone);
  if (dead_class != kNone) id[dead_class] = kDead;
  std::vector<std::uint32_t> order;
  std::uint32_t init_class = cls[a.initial()];
  State next_id = 1;
  if (init_class != dead_class) {
    id[init_class] = next_id++;
    order.push_back(init_class);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    State s = rep[order[k]];
    for (State t : a.row(s)) {
      std::uint32_t c = cls[t];
      if (id[c] == kNone) {
        id[c] = next_id++;
        order.push_back(c);
      }
    }
  }

  SyncDFA out(a.arity(), next_id);
  out.set_initial(id[init_class]);
  for (std::uint32_t c : order) {
    State s = rep[c];
    State me = id[c];
    out.set_accepting(me, a.accepting(s));
    for (Letter l = 0; l < a.alphabet_size(); ++l) out.set_next(me, l, id[cls[a.next(s, l)]]);
  }
  return out;
}

}  // namespace

SyncDFA minimize(const SyncDFA& a) {
  const std::vector<State> reach = reachable_states(a);
  const std::size_t n = reach.size();
  const std::size_t letters = a.alphabet_size();

  // local indices over reachable states
  std::vector<std::uint32_t> local(a.num_states(), 0);
  for (std::uint32_t i = 0; i < n; ++i) local[reach[i]] = i;

  // inverse transitions, per letter, CSR layout
  std::vector<std::uint32_t> inv_start(letters * (n + 1), 0);
  std::vector<std::uint32_t> inv(letters * n);
  for (Letter l = 0; l < letters; ++l) {
    std::uint32_t* start = &inv_start[l * (n + 1)];
    for (std::uint32_t i = 0; i < n; ++i) ++start[local[a.next(reach[i], l)] + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    std::vector<std::uint32_t> fill(start, start + n);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t t = local[a.next(reach[i], l)];
      inv[l * n + fill[t]++] = i;
    }
  }

  // partition: elements[first[b] .. end[b]) form block b; [first, mid) marked
  std::vector<std::uint32_t> elems(n), loc(n), blk(n);
  std::vector<std::uint32_t> first, end, mid;
  std::vector<char> in_work;
  std::iota(elems.begin(), elems.end(), 0u);
  std::stable_partition(elems.begin(), elems.end(), [&](std::uint32_t i) { return a.accepting(reach[i]); });
  std::size_t num_acc = 0;
  for (std::uint32_t i = 0; i < n; ++i) num_acc += a.accepting(reach[i]) ? 1 : 0;

  std::vector<std::uint32_t> work;
  auto new_block = [&](std::uint32_t f, std::uint32_t e) {
    auto b = static_cast<std::uint32_t>(first.size());
    first.push_back(f);
    end.push_back(e);
    mid.push_back(f);
    in_work.push_back(0);
    for (std::uint32_t k = f; k < e; ++k) blk[elems[k]] = b;
    return b;
  };
  auto push_work = [&](std::uint32_t b) {
    if (!in_work[b]) {
      in_work[b] = 1;
      work.push_back(b);
    }
  };
  if (num_acc > 0) push_work(new_block(0, static_cast<std::uint32_t>(num_acc)));
  if (num_acc < n) push_work(new_block(static_cast<std::uint32_t>(num_acc), static_cast<std::uint32_t>(n)));
  for (std::uint32_t k = 0; k < n; ++k) loc[elems[k]] = k;

  std::vector<std::uint32_t> splitter, touched;
  while (!work.empty()) {
    std::uint32_t sb = work.back();
    work.pop_back();
    in_work[sb] = 0;
    splitter.assign(elems.begin() + first[sb], elems.begin() + end[sb]);
    for (Letter l = 0; l < letters; ++l) {
      const std::uint32_t* start = &inv_start[l * (n + 1)];
      const std::uint32_t* src = &inv[l * n];
      touched.clear();
      for (std::uint32_t t : splitter) {
        for (std::uint32_t k = start[t]; k < start[t + 1]; ++k) {
          std::uint32_t s = src[k];
          std::uint32_t b = blk[s];
          if (loc[s] < mid[b]) continue;  // already marked
          if (mid[b] == first[b]) touched.push_back(b);
          std::uint32_t other = elems[mid[b]];
          std::swap(elems[loc[s]], elems[mid[b]]);
          loc[other] = loc[s];
          loc[s] = mid[b];
          ++mid[b];
        }
      }
      for (std::uint32_t b : touched) {
        if (mid[b] == end[b]) {
          mid[b] = first[b];
          continue;
        }
        std::uint32_t split_at = mid[b];
        std::uint32_t f = first[b];
        mid[b] = f;
        std::uint32_t nb;
        // the marked part [f, split_at) becomes a new block
        first[b] = split_at;
        mid[b] = split_at;
        nb = new_block(f, split_at);
        if (in_work[b]) {
          push_work(nb);
        } else if (split_at - f <= end[b] - first[b]) {
          push_work(nb);
        } else {
          push_work(b);
        }
      }
    }
  }

  std::vector<std::uint32_t> cls(a.num_states(), 0);
  for (std::uint32_t i = 0; i < n; ++i) cls[reach[i]] = blk[i];
  return canonical_quotient(a, reach, cls, static_cast<std::uint32_t>(first.size()));
}

SyncDFA minimize_moore(const SyncDFA& a) {
  const std::vector<State> reach = reachable_states(a);
  std::vector<std::uint32_t> cls(a.num_states(), 0);
  for (State s : reach) cls[s] = a.accepting(s) ? 1 : 0;
  std::uint32_t count = 0;
  {
    bool has_acc = false, has_rej = false;
    for (State s : reach) (a.accepting(s) ? has_acc : has_rej) = true;
    count = (has_acc ? 1u : 0u) + (has_rej ? 1u : 0u);
  }
  struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
      std::size_t h = v.size();
      for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };
  while (true) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> sig_ids;
    std::vector<std::uint32_t> next_cls(a.num_states(), 0);
    std::vector<std::uint32_t> sig(a.alphabet_size() + 1);
    for (State s : reach) {
      sig[0] = cls[s];
      for (Letter l = 0; l < a.alphabet_size(); ++l) sig[l + 1] = cls[a.next(s, l)];
      auto [it, ins] = sig_ids.emplace(sig, static_cast<std::uint32_t>(sig_ids.size()));
      next_cls[s] = it->second;
    }
    auto new_count = static_cast<std::uint32_t>(sig_ids.size());
    cls.swap(next_cls);
    if (new_count == count) break;
    count = new_count;
  }
  return canonical_quotient(a, reach, cls, count);
}

bool is_empty(const SyncDFA& a) {
  for (State s : reachable_states(a))
    if (a.accepting(s)) return false;
  return true;
}

bool decide(const SyncDFA& a) {
  if (a.arity() != 0) throw AutomatonError("decide: automaton has free variables (arity " +
                                           std::to_string(a.arity()) + ")");
  return !is_empty(a);
}

}  // namespace fibwalk::automata
