#pragma once

// The Fibonacci word f = 0100101001001... and string-level period tools.
// Nothing here depends on the automata pipeline except the DFAO export.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fibwalk/automata.hpp"
#include "fibwalk/numeration.hpp"

namespace fibwalk {

/// Nonnegative rational num/den kept in lowest terms.
class Fraction {
 public:
  Fraction(std::uint64_t num = 0, std::uint64_t den = 1);
  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  std::string str() const;
  long double approx() const { return static_cast<long double>(num_) / static_cast<long double>(den_); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    auto l = static_cast<unsigned __int128>(a.num_) * b.den_;
    auto r = static_cast<unsigned __int128>(b.num_) * a.den_;
    return l <=> r;
  }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

/// (a + b * sqrt(d)) / c with c > 0 and d >= 0.
struct Quadratic {
  BigInt a = 0;
  BigInt b = 0;
  BigInt c = 1;
  BigInt d = 0;

  static Quadratic rational(const BigInt& p, const BigInt& q) { return {p, 0, q, 0}; }
  static Quadratic root(const BigInt& d) { return {0, 1, 1, d}; }
  static Quadratic golden_square() { return {3, 1, 2, 5}; }
};

/// First n symbols, by the concatenation X_n = X_{n-1} X_{n-2}.
std::string generate_prefix(std::size_t n);
/// f[n], read off as the last Zeckendorf digit of n.
int symbol_at(std::uint64_t n);
/// Two-state DFAO producing f[n] from msd-first digits of n.
automata::Dfao fibonacci_dfao();

/// border[k] = length of the longest proper border of w[0..k-1]; border[0] = 0.
std::vector<std::size_t> border_array(std::string_view w);
/// Throws std::invalid_argument on the empty word.
std::size_t least_period(std::string_view w);
Fraction exponent(std::string_view w);
/// |w| = ceil(alpha * per(w)), decided exactly.
bool is_alpha_power(std::string_view w, const Quadratic& alpha);

/// Suffix f[n-x..n-1] of length x with least period y.
struct ExponentRecord {
  std::uint64_t n = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  Fraction exponent() const { return {x, y}; }
  friend bool operator==(const ExponentRecord&, const ExponentRecord&) = default;
};

/// Largest suffix exponent of f[0..n-1]; ties go to the shortest suffix.
/// Throws std::invalid_argument for n = 0.
ExponentRecord e_of_n(std::uint64_t n);
/// Same, for the prefix f[0..n-1] supplied by the caller.
ExponentRecord e_of_prefix(std::string_view prefix, std::size_t n);
/// e(n) for first <= n <= last, in order of n.
std::vector<ExponentRecord> e_sweep(std::uint64_t first, std::uint64_t last, unsigned threads = 0);

/// Least periods of all factors of f[0..N-1].
std::set<std::size_t> factor_periods(std::size_t N);
bool check_periods_fibonacci(std::size_t N);

/// Columns n,x,y,exponent,decimal.
void write_exponent_csv(std::ostream& os, const std::vector<ExponentRecord>& records);

/// Worker count: FIBWALK_THREADS if set, else hardware concurrency (at least 1).
unsigned default_threads();

}  // namespace fibwalk
