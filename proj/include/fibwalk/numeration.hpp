#pragma once

// Exact Fibonacci/Lucas arithmetic and Zeckendorf (msd_fib) numeration.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fibwalk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// F_n for any integer n, with F_{-n} = (-1)^{n+1} F_n.
BigInt fib(long n);

/// L_n for any integer n. Negative indices follow L_n = L_{n+2} - L_{n+1},
/// which gives L_{-n} = (-1)^n L_n.
BigInt lucas(long n);

/// F_n for 0 <= n <= 93 (the range that fits in 64 bits).
std::uint64_t fib_u64(int n);

/// Largest k >= 2 with F_k <= n, for n >= 1.
int fib_index_floor(std::uint64_t n);

BigInt isqrt(const BigInt& n);

/// Canonical msd-first Zeckendorf digits. Weights are F_2, F_3, ... from the
/// least significant digit; 0 is the empty string.
class ZeckRep {
 public:
  ZeckRep() = default;
  explicit ZeckRep(std::uint64_t value);

  const std::string& digits() const { return digits_; }
  std::uint64_t value() const { return value_; }
  std::size_t size() const { return digits_.size(); }

  /// "0" for the empty representation, digits otherwise.
  std::string display() const;

  friend bool operator==(const ZeckRep&, const ZeckRep&) = default;

 private:
  std::string digits_;
  std::uint64_t value_ = 0;
};

std::string zeck_encode(std::uint64_t n);

/// Weighted digit sum; accepts non-canonical strings ("11" -> 3).
/// Throws std::invalid_argument on characters other than '0' and '1'.
std::uint64_t zeck_decode(std::string_view digits);

/// True iff digits has no "11" and no leading zero.
bool is_canonical(std::string_view digits);

/// floor(alpha * n), exact.
BigInt floor_alpha(const BigInt& n);
std::uint64_t floor_alpha(std::uint64_t n);

/// floor(alpha^2 * n) = n + floor(alpha * n), exact.
BigInt floor_alpha2(const BigInt& n);
std::uint64_t floor_alpha2(std::uint64_t n);

}  // namespace fibwalk
