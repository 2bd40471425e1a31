#include "fibwalk/repetitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fibwalk/exact.hpp"

namespace fibwalk::repetitions {

using automata::SyncDFA;

PrefixAutomata::PrefixAutomata() {
  report_ = session_.run(prefixes_script());
  b1_set_ = compile("Ex,y $b1(n,x,y)").dfa;
  b2_set_ = compile("Ex,y $b2(n,x,y)").dfa;
}

logic::Compiled PrefixAutomata::compile(std::string_view formula) const {
  return logic::compile(logic::parse_formula(formula, session_.env().names()), session_.env());
}

const SyncDFA& PrefixAutomata::lookup(const std::string& name) const {
  if (name == "b1set") return b1_set_;
  if (name == "b2set") return b2_set_;
  return session_.automaton(name);
}

const PrefixAutomata& prefix_automata() {
  static const PrefixAutomata instance;
  return instance;
}

const char* class_name(IndexClass c) {
  switch (c) {
    case IndexClass::G: return "G";
    case IndexClass::B1: return "B1";
    case IndexClass::B2: return "B2";
  }
  return "?";
}

namespace {

int fib_index_of(std::uint64_t v) {
  if (v == 0) return -1;
  int k = fib_index_floor(v);
  return fib_u64(k) == v ? k : -1;
}

bool has_period(std::string_view w, std::size_t p) {
  if (p == 0) return false;
  for (std::size_t k = 0; k + p < w.size(); ++k)
    if (w[k] != w[k + p]) return false;
  return true;
}

}  // namespace

std::vector<Witness> b1_witnesses(std::uint64_t n) {
  std::vector<Witness> out;
  // n >= F_i - F_{i-2} - 1 = F_{i-1} - 1
  for (int i = 5; i <= 92 && fib_u64(i - 1) <= n + 1; ++i) {
    const std::uint64_t fi = fib_u64(i);
    if (fi < n + 1) continue;
    const int j = fib_index_of(fi - n - 1);
    if (j >= 3 && j <= i - 2) out.push_back({i, j});
  }
  return out;
}

std::vector<Witness> b2_witnesses(std::uint64_t n) {
  std::vector<Witness> out;
  for (int i = 5; i <= 92 && fib_u64(i - 1) <= n; ++i) {
    const std::uint64_t fi = fib_u64(i);
    if (fi <= n) continue;
    // value 1 maps to index 2, which is even, so j = 0 is never produced
    const int k = fib_index_of(fi - n);
    if (k >= 3 && k % 2 == 1) {
      const int j = (k - 1) / 2;
      if (2 * j <= i - 3) out.push_back({i, j});
    }
  }
  return out;
}

bool exceeds_alpha2(const Fraction& e) { return compare_with_alpha2(e.num(), e.den()) > 0; }

bool ClassifiedIndex::consistent() const {
  if (oracle_good != automaton_good) return false;
  if (oracle_good) return b1.empty() && b2.empty();
  return b1.empty() != b2.empty();
}

ClassifiedIndex classify(std::uint64_t n, const ExponentRecord& e, const PrefixAutomata& pa) {
  if (n < 2) throw std::invalid_argument("classify: n must be at least 2");
  ClassifiedIndex c;
  c.n = n;
  c.record = e;
  c.b1 = b1_witnesses(n);
  c.b2 = b2_witnesses(n);
  c.oracle_good = exceeds_alpha2(e.exponent());
  const std::uint64_t v[] = {n};
  c.automaton_good = pa.good().accepts_values(v);
  c.cls = c.oracle_good ? IndexClass::G : (!c.b1.empty() ? IndexClass::B1 : IndexClass::B2);
  return c;
}

ClassifiedIndex classify(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("classify: n must be at least 2");
  return classify(n, e_of_n(n), prefix_automata());
}

void Report::record(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  passed = false;
  if (failures.size() < 8) failures.push_back(what);
}

nlohmann::json Report::json() const {
  nlohmann::json j = details;
  j["claim"] = claim;
  j["range"] = {first, last};
  j["verdict"] = passed ? "PASS" : "FAIL";
  j["checked"] = checked;
  j["failures"] = failures;
  return j;
}

Report verify_partition(std::uint64_t N, unsigned threads) {
  Report r{"partition", 2, N};
  if (N < 2) return r;
  const PrefixAutomata& pa = prefix_automata();
  const auto records = e_sweep(2, N, threads);
  std::size_t g = 0, b1 = 0, b2 = 0, both = 0;
  for (const auto& e : records) {
    const ClassifiedIndex c = classify(e.n, e, pa);
    r.record(c.consistent(), "n=" + std::to_string(e.n));
    if (!c.b1.empty() && !c.b2.empty()) ++both;
    switch (c.cls) {
      case IndexClass::G: ++g; break;
      case IndexClass::B1: ++b1; break;
      case IndexClass::B2: ++b2; break;
    }
  }
  r.details["counts"] = {{"G", g}, {"B1", b1}, {"B2", b2}, {"B1_and_B2", both}};
  return r;
}

Report verify_lemma1(std::uint64_t N) {
  Report r{"lemma1", 2, N};
  const std::string w = generate_prefix(N);
  std::size_t only_i = 0, only_ii = 0, both = 0;
  nlohmann::json samples = nlohmann::json::array();
  for (std::uint64_t n = 2; n <= N; ++n) {
    const std::string_view prefix(w.data(), n);
    for (const Witness& wt : b1_witnesses(n)) {
      const bool alt_i = has_period(prefix, fib_u64(wt.i - 2));
      const std::uint64_t len = fib_u64(wt.j) - 1;
      const bool alt_ii = len <= n && has_period(prefix.substr(n - len), fib_u64(wt.j - 2));
      r.record(alt_i || alt_ii, "n=" + std::to_string(n) + " (i=" + std::to_string(wt.i) + ", j=" + std::to_string(wt.j) + ")");
      if (alt_i && alt_ii) ++both;
      else if (alt_i) ++only_i;
      else if (alt_ii) ++only_ii;
      if (samples.size() < 10) samples.push_back({{"n", n}, {"i", wt.i}, {"j", wt.j}, {"period", alt_i}, {"suffix", alt_ii}});
    }
  }
  r.details["witnesses"] = samples;
  r.details["alternatives"] = {{"both", both}, {"period_only", only_i}, {"suffix_only", only_ii}};
  return r;
}

Report verify_lemma2(std::uint64_t N) {
  Report r{"lemma2", 2, N};
  const std::string w = generate_prefix(N);
  nlohmann::json samples = nlohmann::json::array();
  for (std::uint64_t n = 2; n <= N; ++n) {
    const std::string_view prefix(w.data(), n);
    for (const Witness& wt : b2_witnesses(n)) {
      const bool period = has_period(prefix, fib_u64(wt.i - 2));
      bool suffix = true;
      if (wt.j >= 2) {
        const std::uint64_t len = fib_u64(2 * wt.j + 1);
        suffix = len <= n && has_period(prefix.substr(n - len), fib_u64(2 * wt.j - 1));
      }
      r.record(period && suffix, "n=" + std::to_string(n) + " (i=" + std::to_string(wt.i) + ", j=" + std::to_string(wt.j) + ")");
      if (samples.size() < 10) samples.push_back({{"n", n}, {"i", wt.i}, {"j", wt.j}, {"period", period}, {"suffix", suffix}});
    }
  }
  r.details["witnesses"] = samples;
  return r;
}

int theorem_slack_sign(std::uint64_t n, const ExponentRecord& e) {
  // x/y >= (3 + sqrt5)/2 - 3/sqrt(n)  <=>  (2x - 3y) sqrt(n) - y sqrt(5n) + 6y >= 0
  const BigInt x = e.x, y = e.y, nn = n;
  RadicalSum s;
  s.add(2 * x - 3 * y, nn).add(-y, 5 * nn).add(6 * y, 1);
  return s.sign();
}

Report verify_theorem(std::uint64_t N, unsigned threads) {
  Report r{"theorem", 1, N};
  if (N < 1) return r;
  const auto records = e_sweep(1, N, threads);
  long double min_slack = std::numeric_limits<long double>::infinity();
  std::uint64_t argmin = 0;
  const long double a2 = (3.0L + std::sqrt(5.0L)) / 2.0L;
  for (const auto& e : records) {
    r.record(theorem_slack_sign(e.n, e) >= 0, "n=" + std::to_string(e.n));
    const long double slack = e.exponent().approx() - a2 + 3.0L / std::sqrt(static_cast<long double>(e.n));
    if (slack < min_slack) {
      min_slack = slack;
      argmin = e.n;
    }
  }
  r.details["min_slack"] = static_cast<double>(min_slack);
  r.details["argmin"] = argmin;
  if (argmin) {
    const auto& e = records[argmin - 1];
    r.details["argmin_record"] = {{"x", e.x}, {"y", e.y}, {"exponent", e.exponent().str()}};
  }
  return r;
}

namespace {

std::string ratio_formula(const char* rel, std::uint64_t p, std::uint64_t q) {
  return "Ex,y $suff(n,x,y) & " + std::to_string(p) + "*y" + rel + std::to_string(q) + "*x";
}

std::uint64_t largest_index(std::uint64_t p, std::uint64_t q, const char* rel) {
  if (q == 0) throw std::invalid_argument("largest index: q must be positive");
  if (p <= q) throw std::invalid_argument("largest index: p/q <= 1, and every e(n) >= 1");
  if (compare_with_alpha2(p, q) >= 0)
    throw std::invalid_argument("largest index: p/q >= alpha^2, so no largest index exists");
  const PrefixAutomata& pa = prefix_automata();
  logic::PredicateEnv env = pa.session().env();
  logic::Compiled has = pa.compile(ratio_formula(rel, p, q));
  env.bind({"ratio_suffix", logic::Command::Kind::Def, has.dfa, has.vars, {}});
  const auto f = logic::parse_formula("(~$ratio_suffix(n)) & Am (m>n) => $ratio_suffix(m)", env.names());
  const logic::Compiled li = logic::compile(f, env);
  const auto first = automata::first_accepted(li.dfa, 1);
  if (first.empty()) throw std::runtime_error("largest index: automaton accepts nothing");
  return first[0][0];
}

}  // namespace

MGamma m_gamma_automaton(std::uint64_t p, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("m_gamma: q must be positive");
  MGamma m;
  m.dfa = prefix_automata().compile(ratio_formula("<=", p, q)).dfa;
  if (p < q) m.warning = "p/q < 1: every n >= 1 qualifies";
  return m;
}

std::uint64_t largest_index_below(std::uint64_t p, std::uint64_t q) { return largest_index(p, q, "<="); }
std::uint64_t largest_index_at_most(std::uint64_t p, std::uint64_t q) { return largest_index(p, q, "<"); }

std::uint64_t oracle_largest_below(std::uint64_t p, std::uint64_t q, std::uint64_t limit, unsigned threads) {
  if (q == 0) throw std::invalid_argument("oracle_largest_below: q must be positive");
  std::uint64_t best = 0;
  const Fraction bound(p, q);
  for (const auto& e : e_sweep(1, limit, threads))
    if (e.exponent() < bound) best = e.n;
  return best;
}

void write_classification_csv(std::ostream& os, const std::vector<ClassifiedIndex>& rows) {
  os << "n,class,i,j,x,y,exponent\n";
  for (const auto& c : rows) {
    os << c.n << ',' << class_name(c.cls) << ',';
    const std::vector<Witness>* w = c.cls == IndexClass::B1 ? &c.b1 : c.cls == IndexClass::B2 ? &c.b2 : nullptr;
    if (w && !w->empty())
      os << w->front().i << ',' << w->front().j;
    else
      os << ',';
    os << ',' << c.record.x << ',' << c.record.y << ',' << c.record.exponent().str() << '\n';
  }
}

}  // namespace fibwalk::repetitions
