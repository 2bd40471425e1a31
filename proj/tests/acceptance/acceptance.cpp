// One PASS/FAIL line per acceptance criterion. With no argument every
// criterion runs; otherwise only the listed numbers. Exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fibwalk/automata.hpp"
#include "fibwalk/exact.hpp"
#include "fibwalk/fibword.hpp"
#include "fibwalk/identities.hpp"
#include "fibwalk/logic.hpp"
#include "fibwalk/numeration.hpp"
#include "fibwalk/repetitions.hpp"
#include "interpreter.hpp"

using namespace fibwalk;
using automata::SyncDFA;
using Tuple = std::vector<std::uint64_t>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Criterion {
  int number;
  const char* title;
  double limit_s;  // wall-clock budget, part of the criterion
  std::function<Outcome()> run;
};

std::uint64_t F(int k) {
  std::uint64_t a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

bool accepts(const SyncDFA& a, const Tuple& v) { return a.accepts_values(v); }

logic::Compiled compile_in(const logic::Session& s, const std::string& text) {
  return logic::compile(logic::parse_formula(text, s.env().names()), s.env());
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// ---- criteria --------------------------------------------------------------

Outcome dfa_state_count() {
  Outcome o;
  logic::Session s;
  s.run(repetitions::prefixes_script());
  const std::size_t states = s.automaton("good").live_states();
  o.require(states == 12, "good has " + std::to_string(states) + " states");
  if (o.pass) o.detail = "good: 12 states";
  return o;
}

Outcome set_listings() {
  Outcome o;
  const auto& pa = repetitions::prefix_automata();
  const std::vector<std::uint64_t> g{13, 14, 22, 23, 24, 26, 27, 34, 35, 36, 37, 38, 39, 40, 43};
  const std::vector<std::uint64_t> b1{2, 4, 5, 7, 9, 10, 12, 15, 17, 18, 20, 25, 28, 30, 31, 33};
  const std::vector<std::uint64_t> b2{3, 6, 8, 11, 16, 19, 21, 29, 32, 42, 50, 53, 55, 76, 84, 87};
  const auto eg = automata::enumerate(pa.good(), 43);
  const auto e1 = automata::enumerate(pa.b1_set(), 33);
  const auto e2 = automata::enumerate(pa.b2_set(), 87);
  o.require(eg == g, "G: " + join(eg));
  o.require(e1 == b1, "B1: " + join(e1));
  o.require(e2 == b2, "B2: " + join(e2));
  if (o.pass) o.detail = "G to 43, B1 to 33, B2 to 87 exact";
  return o;
}

Outcome session_verdicts() {
  Outcome o;
  logic::Session s;
  std::vector<logic::CommandResult> all = s.run(repetitions::prefixes_script());
  const auto lemmas = s.run(repetitions::lemmas_script());
  all.insert(all.end(), lemmas.begin(), lemmas.end());
  std::set<std::string> seen;
  for (const auto& c : all) {
    if (!c.verdict) continue;
    seen.insert(c.name);
    o.require(*c.verdict, "eval " + c.name + " is FALSE");
  }
  o.require(seen == std::set<std::string>{"test", "check1", "check2a", "check2b"}, "unexpected eval set");
  if (o.pass) o.detail = "test, check1, check2a, check2b: TRUE";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  const auto& pa = repetitions::prefix_automata();
  const std::string w = generate_prefix(1500);
  for (std::uint64_t n = 2; n <= 1500; ++n) {
    const ExponentRecord e = e_of_prefix(w, n);
    const bool oracle_good = compare_with_alpha2(e.x, e.y) > 0;
    o.require(accepts(pa.good(), {n}) == oracle_good, "disagreement at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "n in [2, 1500]";
  return o;
}

Outcome theorem() {
  Outcome o;
  const auto base = repetitions::verify_theorem(21, 1);
  const auto desk = repetitions::verify_theorem(20000, 1);
  o.require(base.passed && base.checked == 21, "base range [1, 21]");
  o.require(desk.passed && desk.checked == 20000,
            "desk range: " + (desk.failures.empty() ? std::string("?") : desk.failures.front()));
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[1, 21] and [1, 20000] single-threaded; min slack %.6f at n=%s",
                  desk.details["min_slack"].get<double>(), desk.details["argmin"].dump().c_str());
    o.detail = buf;
  }
  return o;
}

Outcome lemmas_string_level() {
  Outcome o;
  const auto l1 = repetitions::verify_lemma1(2000);
  const auto l2 = repetitions::verify_lemma2(2000);
  o.require(l1.passed, "lemma1: " + (l1.failures.empty() ? std::string() : l1.failures.front()));
  o.require(l2.passed, "lemma2: " + (l2.failures.empty() ? std::string() : l2.failures.front()));
  if (o.pass) o.detail = std::to_string(l1.checked) + " B1 and " + std::to_string(l2.checked) + " B2 members to 2000";
  return o;
}

Outcome identity_suite() {
  using namespace identities;
  Outcome o;
  std::size_t checked = 0;
  auto take = [&](const CheckResult& r) {
    checked += r.checked;
    o.require(r.passed, r.name + ": " + (r.failures.empty() ? std::string() : r.failures.front()));
  };
  take(check_eq1(-30, 30));
  take(check_lemma3(200));
  const long thresholds[] = {4, 3, 5, 4, 2, 2, 3};
  const auto items = check_lemma4(200);
  o.require(items.size() == 7, "inequality count");
  for (const auto& it : items) {
    take(it.range);
    o.require(it.threshold == thresholds[it.item - 1], "threshold of inequality " + std::to_string(it.item));
    o.require(it.fails_below && *it.fails_below == it.threshold - 1,
              "inequality " + std::to_string(it.item) + " is not sharp at its threshold");
  }
  for (const auto& r : check_monotonicity(100)) take(r);
  for (const auto& r : check_closed_forms(100)) take(r);
  if (o.pass) o.detail = std::to_string(checked) + " exact checks, every inequality sharp at its threshold";
  return o;
}

Outcome crossovers() {
  using namespace identities;
  Outcome o;
  const CheckResult b1 = check_crossovers(Family::B1, 6, 400);
  const CheckResult b2 = check_crossovers(Family::B2, 1, 400);
  std::string fails;
  for (const auto* r : {&b1, &b2})
    for (const auto& f : r->failures) fails += (fails.empty() ? "" : "; ") + std::string(r == &b1 ? "B1 " : "B2 ") + f;
  o.pass = b1.passed && b2.passed;
  o.detail = o.pass ? "B1 on [6, 400], B2 on [1, 400]" : fails;
  return o;
}

Outcome conjecture() {
  Outcome o;
  std::string detail;
  for (int k = 6; k <= 12; ++k) {
    const std::uint64_t p = F(k + 1) - 1, q = F(k - 1), target = F(2 * k - 1) - F(k) - 1;
    const std::uint64_t by_automaton = repetitions::largest_index_below(p, q);
    const std::uint64_t by_sweep = repetitions::oracle_largest_below(p, q, 2 * target);
    o.require(by_automaton == target, "k=" + std::to_string(k) + " automaton gives " + std::to_string(by_automaton));
    o.require(by_sweep == target, "k=" + std::to_string(k) + " sweep gives " + std::to_string(by_sweep));
    detail += (detail.empty() ? "" : ",") + std::to_string(target);
  }
  if (o.pass) o.detail = "k=6..12: " + detail + "; sweeps to twice each target";
  return o;
}

Outcome relation_soundness() {
  Outcome o;
  constexpr std::uint64_t N = 2000;
  std::vector<Tuple> expect;
  for (std::uint64_t x = 0; x <= N; ++x)
    for (std::uint64_t y = 0; x + y <= N; ++y) expect.push_back({x, y, x + y});
  o.require(automata::enumerate_tuples(automata::adder(), N) == expect, "adder");

  const std::pair<automata::Rel, std::function<bool(std::uint64_t, std::uint64_t)>> rels[] = {
      {automata::Rel::Eq, std::equal_to<>()},   {automata::Rel::Ne, std::not_equal_to<>()},
      {automata::Rel::Lt, std::less<>()},       {automata::Rel::Le, std::less_equal<>()},
      {automata::Rel::Gt, std::greater<>()},    {automata::Rel::Ge, std::greater_equal<>()}};
  for (const auto& [rel, holds] : rels) {
    expect.clear();
    for (std::uint64_t x = 0; x <= N; ++x)
      for (std::uint64_t y = 0; y <= N; ++y)
        if (holds(x, y)) expect.push_back({x, y});
    o.require(automata::enumerate_tuples(automata::comparator(rel), N) == expect,
              "comparator " + std::to_string(static_cast<int>(rel)));
  }
  for (unsigned c : {1u, 2u, 3u, 5u, 12u}) {
    expect.clear();
    for (std::uint64_t x = 0; c * x <= N; ++x) expect.push_back({x, c * x});
    o.require(automata::enumerate_tuples(automata::const_multiple(c), N) == expect,
              "const_multiple " + std::to_string(c));
  }
  expect.clear();
  for (std::uint64_t n = 0; n <= N; ++n)
    if (floor_alpha2(n) <= N) expect.push_back({n, floor_alpha2(n)});
  o.require(automata::enumerate_tuples(repetitions::prefix_automata().phi2n(), N) == expect, "phi2n");
  if (o.pass) o.detail = "all tuples with entries <= 2000";
  return o;
}

Outcome property_suite() {
  Outcome o;
  const logic::Session& s = repetitions::prefix_automata().session();

  // A x phi and ~E x ~phi
  const char* bodies[] = {"$suff(n,x,y)", "(x<n) => F[x]=F[x+1]", "$isfib(x) | x>2*n", "$phi2n(n,x) => x>=2*n",
                          "$adjfib(x,n) & x<=n+2", "$b1(n,x,y) | $b2(n,y,x)"};
  for (const char* b : bodies) {
    const std::string body(b);
    o.require(compile_in(s, "Ax " + body).dfa == compile_in(s, "~Ex ~(" + body + ")").dfa, "duality A: " + body);
    o.require(compile_in(s, "Ex " + body).dfa == compile_in(s, "~Ax ~(" + body + ")").dfa, "duality E: " + body);
  }

  // minimization is idempotent and both algorithms agree
  std::vector<std::string> names = s.env().names();
  for (const auto& name : names) {
    const SyncDFA& a = s.automaton(name);
    const SyncDFA m = automata::minimize(a);
    o.require(m == a, "stored " + name + " is not minimal");
    o.require(automata::minimize(m) == m, "minimize not idempotent on " + name);
    o.require(automata::minimize_moore(a) == m, "Moore and Hopcroft differ on " + name);
    o.require(automata::is_well_formed(a), name + " is not well formed");
  }

  // leading zero letters never change acceptance
  std::mt19937_64 rng(23);
  for (const auto& name : names) {
    const SyncDFA& a = s.automaton(name);
    const std::size_t k = static_cast<std::size_t>(a.arity());
    std::vector<Tuple> tuples = automata::first_accepted(a, 200);
    for (int t = 0; t < 400; ++t) {
      Tuple v(k);
      for (auto& x : v) x = rng() % (t < 200 ? 40 : 3000);
      tuples.push_back(v);
    }
    for (const auto& v : tuples) {
      std::vector<automata::Letter> word = automata::encode_tuple(v);
      const bool base = a.accepts(word);
      for (int pad = 1; pad <= 3; ++pad) {
        word.insert(word.begin(), automata::Letter{0});
        o.require(a.accepts(word) == base, "leading zeros change " + name + "(" + join(v) + ")");
      }
    }
  }

  // brute-force interpreter over [0, 300]
  constexpr std::uint64_t B = 300;
  oracle::Interpreter in(B);
  in.load(repetitions::prefixes_script());
  in.load(repetitions::final_remarks_script());
  logic::Session fr;
  fr.run(repetitions::prefixes_script());
  fr.run(repetitions::final_remarks_script());
  auto agree = [&](const std::string& name, const Tuple& v) {
    o.require(in.call(name, v) == accepts(fr.automaton(name), v), "interpreter: " + name + "(" + join(v) + ")");
  };
  for (const char* name : {"isfib", "evenfib", "oddfib", "good", "emmpq", "has_suff", "largest_index"})
    for (std::uint64_t n = 0; n <= B; ++n) agree(name, {n});
  for (std::uint64_t a = 0; a <= B; ++a)
    for (std::uint64_t b = 0; b <= B; ++b) {
      agree("adjfib", {a, b});
      agree("shift", {a, b});
    }
  for (std::uint64_t n = 0; n <= 110; ++n)  // witnesses of phi2n stay below s
    for (std::uint64_t v = 0; v <= B; ++v) agree("phi2n", {n, v});
  for (std::uint64_t n = 0; n <= 80; ++n)
    for (std::uint64_t x = 0; x <= 90; ++x)
      for (std::uint64_t y = 0; y <= 90; ++y)
        for (const char* name : {"suff", "b1", "b2"}) agree(name, {n, x, y});
  for (int t = 0; t < 4000; ++t) {
    const std::uint64_t i = rng() % (B - 30), n = rng() % 30;
    const std::uint64_t j = t % 4 == 0 ? i + (t % 8 ? 8 : 13) : rng() % (B - 30);
    agree("ffactoreq", {i, j, n});
  }
  if (o.pass) o.detail = "duality, minimization, leading zeros, interpreter at 300";
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "DFA state count of good", 10, dfa_state_count},
      {2, "set listings G, B1, B2", 5, set_listings},
      {3, "session verdicts", 60, session_verdicts},
      {4, "good vs e(n) > alpha^2", 120, oracle_agreement},
      {5, "e(n) >= alpha^2 - 3/sqrt(n)", 600, theorem},
      {6, "B1/B2 periods at string level", 120, lemmas_string_level},
      {7, "identity suite", 30, identity_suite},
      {8, "crossover brackets", 60, crossovers},
      {9, "largest n with e(n) < (F_{k+1}-1)/F_{k-1}", 300, conjecture},
      {10, "relation automata soundness", 300, relation_soundness},
      {11, "property suite", 600, property_suite},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += " (over time limit)";
    }
    std::printf("%s criterion %d: %s [%.2f s, limit %.0f s] %s\n", o.pass ? "PASS" : "FAIL", c.number, c.title, secs,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
