#include <algorithm>
#include <compare>
#include <cstdlib>
#include <optional>
#include <tuple>

#include "builder.hpp"
#include "fibwalk/automata.hpp"
#include "fibwalk/numeration.hpp"

namespace fibwalk::automata {

namespace {

// sign of a + b*sqrt(5)
int sign_quad(long a, long b) {
  auto sa = (a > 0) - (a < 0);
  auto sb = (b > 0) - (b < 0);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  __int128 lhs = static_cast<__int128>(a) * a;
  __int128 rhs = static_cast<__int128>(b) * b * 5;
  return lhs > rhs ? sa : sb;
}

bool holds(Rel rel, int cmp) {
  switch (rel) {
    case Rel::Eq: return cmp == 0;
    case Rel::Ne: return cmp != 0;
    case Rel::Lt: return cmp < 0;
    case Rel::Le: return cmp <= 0;
    case Rel::Gt: return cmp > 0;
    case Rel::Ge: return cmp >= 0;
  }
  return false;
}

struct LinKey {
  int sink;  // 0: explicit (u, v); 1: every continuation satisfies the relation
  long u;
  long v;
  Letter prev;
  auto operator<=>(const LinKey&) const = default;
};

// Reading msd-first, the digits consumed so far contribute u*F_{m+1} + v*F_m
// to sum c_t x_t, where m digits remain. A digit combination D moves
// (u, v) -> (u + v + D, u + D); at the end the sum is u.
//
// With P = u*alpha + v and Q = u*beta + v, reachable states satisfy
// |Q| <= C (C = max |D|), and the final sum differs from P*alpha^m/sqrt5 by
// less than what the remaining digits can add. If |P| > K = 4C + (C+|T|)sqrt5
// the sign of (sum - T) is fixed for every continuation, so such states are
// sinks; the remaining states lie in a bounded region.
SyncDFA build_linear(std::span<const long> coeffs, long target, bool equality) {
  const int arity = static_cast<int>(coeffs.size());
  const Letter letters = Letter{1} << arity;
  std::vector<long> digit_sum(letters, 0);
  long dmax = 0, dmin = 0;
  for (Letter l = 0; l < letters; ++l) {
    long d = 0;
    for (int t = 0; t < arity; ++t)
      if ((l >> t) & 1U) d += coeffs[t];
    digit_sum[l] = d;
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  const long c = std::max(-dmin, dmax);
  const long abs_t = std::labs(target);

  auto step = [&](const LinKey& k, Letter l) -> std::optional<LinKey> {
    if (k.prev & l) return std::nullopt;
    if (k.sink) return LinKey{1, 0, 0, l};
    long d = digit_sum[l];
    long u = k.u + k.v + d;
    long v = k.u + d;
    // 2P - 2K and 2P + 2K as a + b sqrt5
    if (sign_quad(u + 2 * v - 8 * c, u - 2 * c - 2 * abs_t) > 0) return std::nullopt;
    if (sign_quad(u + 2 * v + 8 * c, u + 2 * c + 2 * abs_t) < 0) {
      if (equality) return std::nullopt;
      return LinKey{1, 0, 0, l};
    }
    return LinKey{0, u, v, l};
  };
  auto accept = [&](const LinKey& k) {
    if (k.sink) return true;
    return equality ? k.u == target : k.u <= target;
  };
  return minimize(detail::build_reachable(arity, LinKey{0, 0, 0, 0}, step, accept));
}

}  // namespace

SyncDFA linear_relation(std::span<const long> coeffs, long constant, Rel rel) {
  if (coeffs.size() > static_cast<std::size_t>(kMaxArity)) throw AutomatonError("linear_relation: too many tracks");
  std::vector<long> neg(coeffs.begin(), coeffs.end());
  for (auto& x : neg) x = -x;
  switch (rel) {
    case Rel::Eq: return build_linear(coeffs, -constant, true);
    case Rel::Ne: return complement(build_linear(coeffs, -constant, true));
    case Rel::Le: return build_linear(coeffs, -constant, false);
    case Rel::Lt: return build_linear(coeffs, -constant - 1, false);
    case Rel::Ge: return build_linear(neg, constant, false);
    case Rel::Gt: return build_linear(neg, constant - 1, false);
  }
  throw AutomatonError("linear_relation: unknown relation");
}

SyncDFA adder() {
  const long coeffs[] = {1, 1, -1};
  return linear_relation(coeffs, 0, Rel::Eq);
}

SyncDFA comparator(Rel rel) {
  // key: (sign of x - y on the digits read so far, previous letter)
  using Key = std::pair<int, Letter>;
  return minimize(detail::build_reachable(
      2, Key{0, 0},
      [](const Key& k, Letter l) -> std::optional<Key> {
        if (k.second & l) return std::nullopt;
        int cmp = k.first;
        if (cmp == 0) cmp = static_cast<int>(l & 1U) - static_cast<int>((l >> 1) & 1U);
        return Key{cmp, l};
      },
      [rel](const Key& k) { return holds(rel, k.first); }));
}

SyncDFA const_multiple(unsigned c) {
  if (c > 64) throw AutomatonError("const_multiple: factor must be at most 64");
  if (c == 0) {
    const long y_only[] = {1};
    const int to_y[] = {1};
    return remap(linear_relation(y_only, 0, Rel::Eq), to_y, 2);
  }
  // cur relates (x, t) with t = k x
  SyncDFA cur = comparator(Rel::Eq);
  const SyncDFA add = adder();
  const int widen[] = {0, 1};
  for (unsigned k = 1; k < c; ++k) {
    // tracks (x, t, s): t = k x and x + t = s, then drop t
    SyncDFA both = product(remap(cur, widen, 3), add, BoolOp::And);
    cur = project(both, 1);
  }
  return cur;
}

long Dfao::eval(std::span<const Letter> digits) const {
  State s = initial;
  for (Letter d : digits) s = delta.at(s)[d & 1U];
  return output.at(s);
}

long Dfao::at(std::uint64_t n) const {
  std::vector<Letter> digits;
  for (char c : zeck_encode(n)) digits.push_back(c == '1' ? 1U : 0U);
  return eval(digits);
}

SyncDFA sequence_relation(const Dfao& x, const Dfao& y, Rel rel) {
  using Key = std::tuple<State, State, Letter>;
  return minimize(detail::build_reachable(
      2, Key{x.initial, y.initial, 0},
      [&](const Key& k, Letter l) -> std::optional<Key> {
        if (std::get<2>(k) & l) return std::nullopt;
        return Key{x.delta[std::get<0>(k)][l & 1U], y.delta[std::get<1>(k)][(l >> 1) & 1U], l};
      },
      [&](const Key& k) {
        long a = x.output[std::get<0>(k)], b = y.output[std::get<1>(k)];
        return holds(rel, (a > b) - (a < b));
      }));
}

SyncDFA sequence_constant(const Dfao& x, Rel rel, long c) {
  using Key = std::pair<State, Letter>;
  return minimize(detail::build_reachable(
      1, Key{x.initial, 0},
      [&](const Key& k, Letter l) -> std::optional<Key> {
        if (k.second & l) return std::nullopt;
        return Key{x.delta[k.first][l], l};
      },
      [&](const Key& k) {
        long a = x.output[k.first];
        return holds(rel, (a > c) - (a < c));
      }));
}

}  // namespace fibwalk::automata
