#pragma once

// Exact checks of the Fibonacci identities and inequalities behind the
// lower bound on suffix exponents: the two families of bounds f, g (for
// n = F_i - F_j - 1) and r, s (for n = F_i - F_{2j+1}), their difference
// numerators rho and psi, closed forms, and crossover points.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibwalk/numeration.hpp"

namespace fibwalk::identities {

/// (F_i - F_j - 1) F_{j-2} - (F_j - 1) F_{i-2}
BigInt rho(long i, long j);
/// (F_i - F_{2j+1}) F_{2j-1} - F_{i-2} F_{2j+1}
BigInt psi(long i, long j);
/// (F_j - 1) / F_{j-2}
BigRational f_val(long i, long j);
/// (F_i - F_j - 1) / F_{i-2}
BigRational g_val(long i, long j);
/// F_{2j+1} / F_{2j-1}
BigRational r_val(long i, long j);
/// (F_i - F_{2j+1}) / F_{i-2}
BigRational s_val(long i, long j);

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;  // first few, for reports

  void record(bool ok, const std::string& what);
};

/// F_a F_{b+2} - F_{a+2} F_b = (-1)^b F_{a-b}
CheckResult check_eq1(long lo, long hi);
/// Both two-sided estimates of F_{i+2}/F_i and (F_{2i+1}+1)/F_{2i-1} against alpha^2.
CheckResult check_lemma3(long i_max);

struct Lemma4Item {
  int item = 0;  // 1..7
  std::string statement;
  long threshold = 0;
  CheckResult range;                   // threshold <= k <= k_max
  std::optional<long> fails_below;     // threshold - 1 when the inequality fails there
};
std::vector<Lemma4Item> check_lemma4(long k_max);

/// f increasing, g decreasing, rho increasing in i, r increasing, s decreasing,
/// psi increasing in i; each with its difference identity.
std::vector<CheckResult> check_monotonicity(long i_max);

/// Every closed form and its sign conclusion, after clearing denominators.
std::vector<CheckResult> check_closed_forms(long k_max);

enum class Family { B1, B2 };

struct CrossoverRow {
  long j = 0;
  BigRational increasing;  // f (B1) or r (B2)
  BigRational decreasing;  // g (B1) or s (B2)
};

struct CrossoverTable {
  long i = 0;
  Family family = Family::B1;
  long j_prime = 0;  // ceil(i/2) for B1, floor(i/6) for B2
  std::vector<CrossoverRow> rows;  // admissible j only
  bool bracket_holds = false;
  std::string detail;
};

/// Throws std::invalid_argument below the claimed range (i < 6 for B1, i < 1 for B2).
CrossoverTable crossover(long i, Family family);
/// Bracket at j' for every i in [lo, hi]; lo must be in range.
CheckResult check_crossovers(Family family, long lo, long hi);
void write_crossover_csv(std::ostream& os, const CrossoverTable& t);

/// e(n) >= min(g(i,j'), f(i,j'+1)) for n = F_i - F_j - 1 (8 <= i <= i_max), and
/// e(n) >= min(s(i,j'), r(i,j'+1)) for n = F_i - F_{2j+1} (5 <= i <= i_max).
CheckResult check_exponent_lower_bounds(Family family, long i_max);

}  // namespace fibwalk::identities
