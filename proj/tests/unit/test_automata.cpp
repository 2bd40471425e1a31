#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fibwalk/automata.hpp"
#include "fibwalk/numeration.hpp"
#include "fibwalk/regex.hpp"
#include "oracles.hpp"

using namespace fibwalk;
using namespace fibwalk::automata;

namespace {

bool accepts(const SyncDFA& a, std::vector<std::uint64_t> v) { return a.accepts_values(v); }

bool rel_holds(Rel r, long lhs, long rhs) {
  switch (r) {
    case Rel::Eq: return lhs == rhs;
    case Rel::Ne: return lhs != rhs;
    case Rel::Lt: return lhs < rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Gt: return lhs > rhs;
    case Rel::Ge: return lhs >= rhs;
  }
  return false;
}

const Rel kRels[] = {Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge};

SyncDFA random_dfa(std::mt19937& rng, int arity, std::size_t n) {
  SyncDFA a(arity, n);
  std::uniform_int_distribution<State> pick(0, static_cast<State>(n - 1));
  a.set_initial(pick(rng));
  for (State s = 0; s < n; ++s) {
    a.set_accepting(s, rng() % 3 == 0);
    for (Letter l = 0; l < a.alphabet_size(); ++l) a.set_next(s, l, pick(rng));
  }
  return a;
}

}  // namespace

TEST_CASE("validity accepts exactly the canonical tuples") {
  std::mt19937 rng(1);
  for (int arity = 1; arity <= 3; ++arity) {
    SyncDFA v = validity(arity);
    CHECK(is_well_formed(v));
    for (int trial = 0; trial < 3000; ++trial) {
      std::vector<Letter> word(rng() % 10);
      for (auto& l : word) l = rng() % (1U << arity);
      bool ok = true;
      for (std::size_t i = 1; i < word.size(); ++i) ok = ok && (word[i] & word[i - 1]) == 0;
      CHECK(v.accepts(word) == ok);
    }
  }
  CHECK(validity(1).live_states() == 2);
}

TEST_CASE("tuple encoding pads to a common length") {
  std::vector<std::uint64_t> v{5, 1, 0};
  auto w = encode_tuple(v);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == 1U);
  CHECK(w[3] == 2U);
  CHECK(decode_tuple(w, 3) == v);
}

TEST_CASE("adder agrees with integer addition") {
  SyncDFA add = adder();
  CHECK(is_well_formed(add));
  std::mt19937_64 rng(3);
  for (std::uint64_t x = 0; x <= 200; ++x)
    for (std::uint64_t y = 0; y <= 200; ++y) {
      CHECK(accepts(add, {x, y, x + y}));
      CHECK_FALSE(accepts(add, {x, y, x + y + 1}));
      if (x + y > 0) CHECK_FALSE(accepts(add, {x, y, x + y - 1}));
      std::uint64_t z = rng() % 450;
      CHECK(accepts(add, {x, y, z}) == (x + y == z));
    }
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t x = rng() >> 2, y = rng() >> 2;
    CHECK(accepts(add, {x, y, x + y}));
    CHECK_FALSE(accepts(add, {x, y, x + y + 1 + (rng() % 1000)}));
  }
}

TEST_CASE("comparators agree with integer order") {
  for (Rel r : kRels) {
    SyncDFA c = comparator(r);
    for (std::uint64_t x = 0; x <= 150; ++x)
      for (std::uint64_t y = 0; y <= 150; ++y)
        CHECK(accepts(c, {x, y}) == rel_holds(r, static_cast<long>(x), static_cast<long>(y)));
    const long unit[] = {1, -1};
    CHECK(linear_relation(unit, 0, r) == c);
  }
}

TEST_CASE("linear relations agree with arithmetic") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int arity = 1 + static_cast<int>(rng() % 3);
    std::vector<long> coeffs(arity);
    for (auto& c : coeffs) c = static_cast<long>(rng() % 9) - 4;
    const long constant = static_cast<long>(rng() % 15) - 7;
    const Rel r = kRels[rng() % 6];
    SyncDFA a = linear_relation(coeffs, constant, r);
    CHECK(is_well_formed(a));
    const std::uint64_t bound = arity == 3 ? 25 : 90;
    std::vector<std::uint64_t> v(arity, 0);
    auto check_all = [&](auto&& self, int t) -> void {
      if (t == arity) {
        long sum = constant;
        for (int i = 0; i < arity; ++i) sum += coeffs[i] * static_cast<long>(v[i]);
        CHECK(a.accepts_values(v) == rel_holds(r, sum, 0));
        return;
      }
      for (v[t] = 0; v[t] <= bound; ++v[t]) self(self, t + 1);
    };
    check_all(check_all, 0);
  }
}

TEST_CASE("constant multiples from chained adders match the direct relation") {
  for (unsigned c = 0; c <= 7; ++c) {
    SyncDFA m = const_multiple(c);
    const long coeffs[] = {static_cast<long>(c), -1};
    CHECK(m == linear_relation(coeffs, 0, Rel::Eq));
    for (std::uint64_t x = 0; x <= 60; ++x)
      for (std::uint64_t y = 0; y <= 60 * 7; ++y) CHECK(accepts(m, {x, y}) == (y == c * x));
  }
}

TEST_CASE("hopcroft and moore minimization agree") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int arity = static_cast<int>(rng() % 3);
    const std::size_t n = 1 + rng() % 40;
    SyncDFA a = random_dfa(rng, arity, n);
    SyncDFA h = minimize(a);
    CHECK(h == minimize_moore(a));
    CHECK(minimize(h) == h);
    CHECK(h.num_states() <= n + 1);
    // same language on random words
    for (int w = 0; w < 50; ++w) {
      std::vector<Letter> word(rng() % 8);
      for (auto& l : word) l = arity == 0 ? 0 : rng() % (1U << arity);
      if (arity == 0 && !word.empty()) continue;
      CHECK(h.accepts(word) == a.accepts(word));
    }
  }
}

TEST_CASE("every relation is closed under leading zeros") {
  const long coeffs[] = {2, -3, 1};
  std::vector<SyncDFA> autos{adder(), comparator(Rel::Lt), linear_relation(coeffs, 4, Rel::Le), validity(2)};
  std::mt19937_64 rng(9);
  for (const auto& a : autos) {
    for (int i = 0; i < 500; ++i) {
      std::vector<std::uint64_t> v(static_cast<std::size_t>(a.arity()));
      for (auto& x : v) x = rng() % 300;
      auto w = encode_tuple(v);
      const bool base = a.accepts(w);
      for (int pad = 1; pad <= 3; ++pad) {
        w.insert(w.begin(), 0U);
        CHECK(a.accepts(w) == base);
      }
    }
  }
}

TEST_CASE("boolean products and complement") {
  SyncDFA lt = comparator(Rel::Lt), le = comparator(Rel::Le), eq = comparator(Rel::Eq);
  CHECK(product(le, complement(eq), BoolOp::And) == lt);
  CHECK(product(lt, eq, BoolOp::Or) == le);
  CHECK(complement(complement(lt)) == lt);
  CHECK(complement(lt) == comparator(Rel::Ge));
  CHECK(product(lt, le, BoolOp::Implies) == validity(2));
  CHECK(product(lt, lt, BoolOp::Iff) == validity(2));
  CHECK(product(lt, comparator(Rel::Gt), BoolOp::Xor) == comparator(Rel::Ne));
  CHECK(product(le, lt, BoolOp::AndNot) == eq);
  CHECK(is_empty(product(lt, comparator(Rel::Ge), BoolOp::And)));
  CHECK_THROWS_AS(product(lt, adder(), BoolOp::And), AutomatonError);
}

TEST_CASE("projection quantifies existentially") {
  // exists y: x + y = z  <=>  x <= z
  SyncDFA add = adder();
  SyncDFA ex = project(add, 1);
  CHECK(ex == comparator(Rel::Le));
  // exists x, y: x + y = z holds for every z
  CHECK(project(add, std::vector<int>{0, 1}) == validity(1));
  CHECK(project(add, std::vector<int>{0, 1, 2}) == constant(true));
  CHECK(decide(project(add, std::vector<int>{0, 1, 2})));
  // witnesses longer than the kept tracks: exists y: y = x + 100
  const long c[] = {1, -1};
  SyncDFA shifted = project(linear_relation(c, 100, Rel::Eq), 1);
  CHECK(shifted == validity(1));
  CHECK_FALSE(decide(project(empty_language(2), std::vector<int>{0, 1})));
}

TEST_CASE("remap reorders, merges and widens tracks") {
  SyncDFA lt = comparator(Rel::Lt);
  const int swap[] = {1, 0};
  CHECK(remap(lt, swap, 2) == comparator(Rel::Gt));
  const int merge[] = {0, 0};
  CHECK(remap(comparator(Rel::Eq), merge, 1) == validity(1));
  CHECK(is_empty(remap(lt, merge, 1)));
  const int widen[] = {0, 2};
  SyncDFA w = remap(lt, widen, 3);
  for (std::uint64_t x = 0; x < 30; ++x)
    for (std::uint64_t y = 0; y < 30; ++y)
      for (std::uint64_t z = 0; z < 30; z += 7) CHECK(accepts(w, {x, y, z}) == (x < z));
}

TEST_CASE("enumeration and shortlex listing match brute force") {
  SyncDFA even_coeff = [] {
    const long c[] = {1, -2};
    return project(linear_relation(c, 0, Rel::Eq), 1);  // exists y: x = 2y
  }();
  auto evens = enumerate(even_coeff, 100);
  std::vector<std::uint64_t> expect;
  for (std::uint64_t x = 0; x <= 100; x += 2) expect.push_back(x);
  CHECK(evens == expect);
  auto first = first_accepted(even_coeff, 5);
  REQUIRE(first.size() == 5);
  CHECK(first[0][0] == 0);
  CHECK(first[1][0] == 2);
  CHECK(first[4][0] == 8);
  auto pairs = enumerate_tuples(comparator(Rel::Lt), 4);
  CHECK(pairs.size() == 10);
  CHECK(first_accepted(empty_language(1), 3).empty());
}

TEST_CASE("text serialization round-trips and dot output names the graph") {
  SyncDFA a = adder();
  std::stringstream ss;
  write_text(ss, a);
  CHECK(read_text(ss) == a);
  std::ostringstream dot;
  write_dot(dot, a, "adder");
  CHECK(dot.str().find("digraph \"adder\"") != std::string::npos);
  std::istringstream bad("arity 2\nstates x\n");
  CHECK_THROWS(read_text(bad));
}

TEST_CASE("tuple regexes") {
  SyncDFA isfib = compile_regex("0*10*", 1);
  std::set<std::uint64_t> fibs;
  for (int k = 2; k < 20; ++k) fibs.insert(fib_u64(k));
  for (std::uint64_t n = 0; n <= 3000; ++n) CHECK(isfib.accepts_values(std::vector<std::uint64_t>{n}) == (fibs.count(n) > 0));
  CHECK(isfib.live_states() == 2);

  // non-canonical strings in the pattern are cut away: "11" never matches
  CHECK(is_empty(compile_regex("0*11", 1)));
  CHECK(compile_regex("[0,0]*[1,0][0,1]*", 2).arity() == 2);
  CHECK(compile_regex("(0|1)*", 1) == validity(1));
  CHECK(compile_regex("0* ( 1 0 )+ 0*", 1) == compile_regex("0*(10)(10)*0*", 1));
  CHECK(compile_regex("0*1?", 1) == compile_regex("0*|0*1", 1));

  try {
    compile_regex("0*(10", 1);
    CHECK(false);
  } catch (const RegexError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(compile_regex("[0,1]", 1), RegexError);
  CHECK_THROWS_AS(compile_regex("0*x", 1), RegexError);
  CHECK_THROWS_AS(compile_regex("[0]", 2), RegexError);
}
