#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fibwalk/exact.hpp"
#include "fibwalk/fibword.hpp"
#include "fibwalk/repetitions.hpp"
#include "oracles.hpp"

using namespace fibwalk;
using namespace fibwalk::repetitions;

namespace {

std::uint64_t F(int k) {
  std::uint64_t a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

bool has_period(std::string_view w, std::size_t p) {
  for (std::size_t i = 0; i + p < w.size(); ++i)
    if (w[i] != w[i + p]) return false;
  return true;
}

// Number of (x, y) with 1 <= y <= x <= n such that the length-x suffix of the
// length-n prefix has period y. The suffixes are the prefixes of the reversal,
// and the periods of a word of length x are x minus its borders.
std::uint64_t suffix_period_pairs(std::string_view prefix) {
  const std::string rev(prefix.rbegin(), prefix.rend());
  std::vector<std::size_t> fail(rev.size() + 1, 0), chain(rev.size() + 1, 0);
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= rev.size(); ++k) {
    if (k > 1) {
      std::size_t b = fail[k - 1];
      while (b > 0 && rev[b] != rev[k - 1]) b = fail[b];
      if (rev[b] == rev[k - 1]) ++b;
      fail[k] = b;
    }
    chain[k] = fail[k] ? chain[fail[k]] + 1 : 0;
    total += chain[k] + 1;
  }
  return total;
}

// Accepted words of length |zeck(n)| whose track 0 spells zeck(n).
std::uint64_t count_with_first_track(const automata::SyncDFA& a, std::uint64_t n) {
  const std::string rep = n ? oracle::zeck_by_search(n) : std::string();
  std::map<automata::State, std::uint64_t> cur{{a.initial(), 1}};
  for (char c : rep) {
    std::map<automata::State, std::uint64_t> next;
    const automata::Letter bit = c == '1';
    for (auto [s, cnt] : cur)
      for (automata::Letter l = 0; l < a.alphabet_size(); ++l)
        if ((l & 1U) == bit && a.next(s, l) != 0) next[a.next(s, l)] += cnt;
    cur = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto [s, cnt] : cur)
    if (a.accepting(s)) total += cnt;
  return total;
}

// x/y - (alpha^2 - 3/sqrt(n)), sign only, by squaring over Q(sqrt5).
int slack_sign(std::uint64_t n, std::uint64_t x, std::uint64_t y) {
  const QuadInt gap = QuadInt::alpha2() - QuadInt(BigRational(x, y));  // alpha^2 - x/y
  if (gap.sign() <= 0) return 1;
  const QuadInt d = QuadInt(BigRational(9, n)) - gap * gap;
  return d.sign();
}

}  // namespace

TEST_CASE("witness enumeration matches a direct search over (i, j)") {
  std::map<std::uint64_t, std::vector<Witness>> w1, w2;
  for (int i = 5; i <= 25; ++i) {
    for (int j = 3; j <= i - 2; ++j) w1[F(i) - F(j) - 1].push_back({i, j});
    for (int j = 1; 2 * j <= i - 3; ++j) w2[F(i) - F(2 * j + 1)].push_back({i, j});
  }
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    CAPTURE(n);
    REQUIRE(b1_witnesses(n) == w1[n]);
    REQUIRE(b2_witnesses(n) == w2[n]);
  }
  CHECK(b1_witnesses(2) == std::vector<Witness>{{5, 3}});
  CHECK(b2_witnesses(3) == std::vector<Witness>{{5, 1}});
}

TEST_CASE("classification and its error case") {
  CHECK_THROWS_AS(classify(1), std::invalid_argument);
  const ClassifiedIndex c3 = classify(3);
  CHECK(c3.cls == IndexClass::B2);
  CHECK(c3.consistent());
  CHECK(classify(13).cls == IndexClass::G);
  CHECK(classify(5).cls == IndexClass::B1);
  CHECK(classify(6).cls == IndexClass::B2);
  CHECK(std::string(class_name(IndexClass::B1)) == "B1");
  CHECK(exceeds_alpha2(Fraction(8, 3)));
  CHECK_FALSE(exceeds_alpha2(Fraction(13, 5)));
  CHECK(exceeds_alpha2(Fraction(21, 8)));
  CHECK_FALSE(exceeds_alpha2(Fraction(34, 13)));
}

TEST_CASE("partition of n >= 2 into G, B1, B2 to 5000") {
  const Report r = verify_partition(5000);
  CHECK(r.passed);
  CHECK(r.checked == 4999);
  CHECK(r.details["counts"]["G"] == 4814);
  CHECK(r.details["counts"]["B1"] == 121);
  CHECK(r.details["counts"]["B2"] == 64);
  CHECK(r.details["counts"]["B1_and_B2"] == 0);
  const auto& pa = prefix_automata();
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    const ClassifiedIndex c = classify(n);
    const bool oracle_good = compare_with_alpha2(c.record.x, c.record.y) > 0;
    const std::uint64_t v[] = {n};
    REQUIRE(pa.good().accepts_values(v) == oracle_good);
    REQUIRE(c.cls == (oracle_good ? IndexClass::G : c.b1.empty() ? IndexClass::B2 : IndexClass::B1));
    REQUIRE(!c.b1.empty() + !c.b2.empty() + oracle_good == 1);
  }
}

TEST_CASE("periods of B1 and B2 prefixes at string level to 2000") {
  CHECK(verify_lemma1(2000).passed);
  CHECK(verify_lemma2(2000).passed);
  const std::string w = generate_prefix(2000);
  std::size_t b1 = 0, b2 = 0;
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    const std::string_view p(w.data(), n);
    for (const Witness& x : b1_witnesses(n)) {
      ++b1;
      const std::size_t len = F(x.j) - 1;
      REQUIRE((has_period(p, F(x.i - 2)) || has_period(p.substr(n - len), F(x.j - 2))));
    }
    for (const Witness& x : b2_witnesses(n)) {
      ++b2;
      REQUIRE(has_period(p, F(x.i - 2)));
      if (x.j >= 2) REQUIRE(has_period(p.substr(n - F(2 * x.j + 1)), F(2 * x.j - 1)));
    }
  }
  CHECK(b1 == 93);
  CHECK(b2 == 50);
}

TEST_CASE("alpha^2 - 3/sqrt(n) bound: base range and 20000, with an independent sign") {
  const Report base = verify_theorem(21);
  CHECK(base.passed);
  CHECK(base.checked == 21);
  const Report r = verify_theorem(20000);
  CHECK(r.passed);
  CHECK(r.details["argmin"] == 17566);
  const auto sweep = e_sweep(1, 20000, 0);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    const ExponentRecord& e = sweep[n - 1];
    const int s = slack_sign(n, e.x, e.y);
    REQUIRE(theorem_slack_sign(n, e) == s);
    REQUIRE(s >= 0);
  }
  // 13/5 is below alpha^2, and 3/sqrt(17566) is just large enough
  CHECK(slack_sign(17566, 13, 5) > 0);
  CHECK(slack_sign(17566 * 2, 13, 5) < 0);
}

TEST_CASE("suff agrees with border chains of the reversed prefix to 1500") {
  const auto& pa = prefix_automata();
  const automata::SyncDFA& suff = pa.suff();
  REQUIRE(suff.arity() == 3);
  const std::string w = generate_prefix(1500);
  for (std::uint64_t n = 0; n <= 1500; ++n) {
    CAPTURE(n);
    REQUIRE(count_with_first_track(suff, n) == suffix_period_pairs(std::string_view(w.data(), n)));
  }
  for (std::uint64_t n = 1; n <= 40; ++n)
    for (std::uint64_t x = 0; x <= 45; ++x)
      for (std::uint64_t y = 0; y <= 45; ++y) {
        const std::uint64_t v[] = {n, x, y};
        const bool expect = y >= 1 && y <= x && x <= n && has_period(std::string_view(w.data() + n - x, x), y);
        REQUIRE(suff.accepts_values(v) == expect);
      }
}

TEST_CASE("M_{p/q} membership against e(n)") {
  const auto sweep = e_sweep(1, 1500, 0);
  for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{2, 1}, {5, 2}, {3, 1}}) {
    const MGamma m = m_gamma_automaton(p, q);
    CHECK_FALSE(m.warning);
    for (std::uint64_t n = 1; n <= 1500; ++n) {
      const std::uint64_t v[] = {n};
      REQUIRE(m.dfa.accepts_values(v) == (sweep[n - 1].x * q >= p * sweep[n - 1].y));
    }
  }
  const MGamma one = m_gamma_automaton(1, 1);
  for (std::uint64_t n = 1; n <= 1500; ++n) {
    const std::uint64_t v[] = {n};
    REQUIRE(one.dfa.accepts_values(v));
  }
  const MGamma half = m_gamma_automaton(1, 2);
  REQUIRE(half.warning);
  CHECK(half.warning->find("p/q < 1") != std::string::npos);
  CHECK_THROWS_AS(m_gamma_automaton(3, 0), std::invalid_argument);
}

TEST_CASE("largest index below (F_{k+1}-1)/F_{k-1}") {
  for (int k = 6; k <= 9; ++k) {
    const std::uint64_t p = F(k + 1) - 1, q = F(k - 1);
    const std::uint64_t expect = F(2 * k - 1) - F(k) - 1;
    CAPTURE(k);
    CHECK(largest_index_below(p, q) == expect);
    CHECK(oracle_largest_below(p, q, 2 * expect + 100) == expect);
  }
  CHECK(largest_index_at_most(12, 5) == 130);
  CHECK(largest_index_at_most(20, 8) == 355);
  CHECK_THROWS_AS(largest_index_below(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(largest_index_below(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(largest_index_below(21, 8), std::invalid_argument);
  CHECK_THROWS_AS(largest_index_below(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(oracle_largest_below(5, 0, 10), std::invalid_argument);
}

TEST_CASE("classification CSV") {
  std::vector<ClassifiedIndex> rows;
  for (std::uint64_t n = 2; n <= 6; ++n) rows.push_back(classify(n));
  std::ostringstream os;
  write_classification_csv(os, rows);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,class,i,j,x,y,exponent");
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(count == 5);
  CHECK(os.str().find("\n3,B2,5,1,") != std::string::npos);
}
