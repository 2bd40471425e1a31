#pragma once

// Classification of prefix lengths n by their largest suffix exponent:
// G (some suffix exceeds alpha^2) and the two exception families
//   B1: n = F_i - F_j - 1,     i >= 5, 3 <= j <= i-2
//   B2: n = F_i - F_{2j+1},    i >= 5, 1 <= j <= (i-3)/2
// decided both by compiled automata and by the string oracle.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fibwalk/fibword.hpp"
#include "fibwalk/logic.hpp"

namespace fibwalk::repetitions {

/// Scripts shipped with the library (see scripts/).
std::string_view prefixes_script();
std::string_view lemmas_script();
std::string_view final_remarks_script();

/// Session with the prefix-classification script compiled, plus the
/// one-variable sets b1set(n) = Ex,y $b1(n,x,y) and b2set likewise.
class PrefixAutomata {
 public:
  PrefixAutomata();
  logic::Session& session() { return session_; }
  const logic::Session& session() const { return session_; }
  const std::vector<logic::CommandResult>& report() const { return report_; }

  const automata::SyncDFA& good() const { return session_.automaton("good"); }
  const automata::SyncDFA& suff() const { return session_.automaton("suff"); }
  const automata::SyncDFA& phi2n() const { return session_.automaton("phi2n"); }
  const automata::SyncDFA& b1() const { return session_.automaton("b1"); }
  const automata::SyncDFA& b2() const { return session_.automaton("b2"); }
  const automata::SyncDFA& b1_set() const { return b1_set_; }
  const automata::SyncDFA& b2_set() const { return b2_set_; }

  /// Compiles a closed or open formula (after "?msd_fib") against this session.
  logic::Compiled compile(std::string_view formula) const;
  /// Named automaton: any bound predicate, or b1set / b2set.
  const automata::SyncDFA& lookup(const std::string& name) const;

 private:
  logic::Session session_;
  std::vector<logic::CommandResult> report_;
  automata::SyncDFA b1_set_;
  automata::SyncDFA b2_set_;
};

/// Shared instance, built on first use.
const PrefixAutomata& prefix_automata();

enum class IndexClass { G, B1, B2 };
const char* class_name(IndexClass c);

struct Witness {
  int i = 0;
  int j = 0;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// All (i, j) with n = F_i - F_j - 1, i >= 5, 3 <= j <= i-2.
std::vector<Witness> b1_witnesses(std::uint64_t n);
/// All (i, j) with n = F_i - F_{2j+1}, i >= 5, 1 <= j <= (i-3)/2.
std::vector<Witness> b2_witnesses(std::uint64_t n);
/// x/y > alpha^2, exactly.
bool exceeds_alpha2(const Fraction& e);

struct ClassifiedIndex {
  std::uint64_t n = 0;
  IndexClass cls = IndexClass::G;
  ExponentRecord record;           // e(n) with its witness suffix
  std::vector<Witness> b1;
  std::vector<Witness> b2;
  bool oracle_good = false;        // e(n) > alpha^2
  bool automaton_good = false;     // good accepts n
  /// Exactly one class, its witnesses exist, and both deciders agree.
  bool consistent() const;
};

/// Throws std::invalid_argument for n < 2.
ClassifiedIndex classify(std::uint64_t n);
ClassifiedIndex classify(std::uint64_t n, const ExponentRecord& e, const PrefixAutomata& pa);

struct Report {
  Report() = default;
  Report(std::string c, std::uint64_t lo, std::uint64_t hi) : claim(std::move(c)), first(lo), last(hi) {}

  std::string claim;
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;  // first few
  nlohmann::json details = nlohmann::json::object();

  void record(bool ok, const std::string& what);
  nlohmann::json json() const;
};

Report verify_partition(std::uint64_t N, unsigned threads = 0);
/// For B1 members n <= N with witness (i,j): f[0..n-1] has period F_{i-2}
/// or a suffix of length F_j - 1 with period F_{j-2}.
Report verify_lemma1(std::uint64_t N);
/// For B2 members n <= N with witness (i,j): period F_{i-2}, and for j >= 2
/// a suffix of length F_{2j+1} with period F_{2j-1}.
Report verify_lemma2(std::uint64_t N);
/// e(n) >= alpha^2 - 3/sqrt(n) for 1 <= n <= N, with certified signs.
Report verify_theorem(std::uint64_t N, unsigned threads = 0);

/// Sign of x/y - (alpha^2 - 3/sqrt(n)).
int theorem_slack_sign(std::uint64_t n, const ExponentRecord& e);

struct MGamma {
  automata::SyncDFA dfa;
  std::optional<std::string> warning;
};
/// {n : e(n) >= p/q}. Throws std::invalid_argument when q = 0.
MGamma m_gamma_automaton(std::uint64_t p, std::uint64_t q);

/// Largest n with e(n) < p/q, from the automaton of ~emmpq(n) & Am (m>n) => emmpq(m).
/// Requires 1 < p/q < alpha^2; throws std::invalid_argument otherwise.
std::uint64_t largest_index_below(std::uint64_t p, std::uint64_t q);
/// The same query with the strict has_suff predicate, i.e. largest n with e(n) <= p/q.
std::uint64_t largest_index_at_most(std::uint64_t p, std::uint64_t q);
/// Oracle: largest n <= limit with e(n) < p/q (0 when none).
std::uint64_t oracle_largest_below(std::uint64_t p, std::uint64_t q, std::uint64_t limit, unsigned threads = 0);

/// Columns n,class,i,j,x,y,exponent.
void write_classification_csv(std::ostream& os, const std::vector<ClassifiedIndex>& rows);

}  // namespace fibwalk::repetitions
