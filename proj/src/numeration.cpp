#include "fibwalk/numeration.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace fibwalk {

namespace {

// (F_m, F_{m+1}) by fast doubling.
std::pair<BigInt, BigInt> fib_pair(unsigned long m) {
  if (m == 0) return {BigInt(0), BigInt(1)};
  auto [a, b] = fib_pair(m / 2);
  BigInt c = a * (2 * b - a);
  BigInt d = a * a + b * b;
  if (m % 2 == 0) return {std::move(c), std::move(d)};
  BigInt e = c + d;
  return {std::move(d), std::move(e)};
}

constexpr std::array<std::uint64_t, 94> make_fib_table() {
  std::array<std::uint64_t, 94> t{};
  t[0] = 0;
  t[1] = 1;
  for (std::size_t i = 2; i < t.size(); ++i) t[i] = t[i - 1] + t[i - 2];
  return t;
}

constexpr auto kFib = make_fib_table();

}  // namespace

BigInt fib(long n) {
  if (n >= 0) return fib_pair(static_cast<unsigned long>(n)).first;
  unsigned long m = static_cast<unsigned long>(-n);
  BigInt v = fib_pair(m).first;
  return (m % 2 == 0) ? BigInt(-v) : v;
}

BigInt lucas(long n) {
  if (n >= 0) {
    auto [f, f1] = fib_pair(static_cast<unsigned long>(n));
    // L_n = 2 F_{n+1} - F_n
    return 2 * f1 - f;
  }
  unsigned long m = static_cast<unsigned long>(-n);
  BigInt v = lucas(static_cast<long>(m));
  return (m % 2 == 0) ? v : BigInt(-v);
}

std::uint64_t fib_u64(int n) {
  if (n < 0 || n >= static_cast<int>(kFib.size()))
    throw std::out_of_range("fib_u64: index out of range");
  return kFib[static_cast<std::size_t>(n)];
}

int fib_index_floor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("fib_index_floor: n must be positive");
  int k = 2;
  while (k + 1 < static_cast<int>(kFib.size()) && kFib[k + 1] <= n) ++k;
  return k;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  if (n < 2) return n;
  // Newton from an over-estimate; the sequence decreases to floor(sqrt(n)).
  BigInt x = BigInt(1) << ((msb(n) / 2) + 1);
  while (true) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

ZeckRep::ZeckRep(std::uint64_t value) : digits_(zeck_encode(value)), value_(value) {}

std::string ZeckRep::display() const { return digits_.empty() ? std::string("0") : digits_; }

std::string zeck_encode(std::uint64_t n) {
  if (n == 0) return {};
  int top = fib_index_floor(n);
  std::string out;
  out.reserve(static_cast<std::size_t>(top - 1));
  for (int k = top; k >= 2; --k) {
    if (kFib[k] <= n) {
      out.push_back('1');
      n -= kFib[k];
    } else {
      out.push_back('0');
    }
  }
  return out;
}

std::uint64_t zeck_decode(std::string_view digits) {
  std::uint64_t value = 0;
  std::size_t len = digits.size();
  for (std::size_t i = 0; i < len; ++i) {
    char c = digits[i];
    if (c != '0' && c != '1') throw std::invalid_argument("zeck_decode: digit must be 0 or 1");
    if (c == '1') {
      std::size_t weight = len - i + 1;  // lsd has weight F_2
      if (weight >= kFib.size()) throw std::overflow_error("zeck_decode: value exceeds 64 bits");
      value += kFib[weight];
    }
  }
  return value;
}

bool is_canonical(std::string_view digits) {
  if (!digits.empty() && digits.front() == '0') return false;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != '0' && digits[i] != '1') return false;
    if (i > 0 && digits[i] == '1' && digits[i - 1] == '1') return false;
  }
  return true;
}

BigInt floor_alpha(const BigInt& n) {
  if (n < 0) throw std::domain_error("floor_alpha: n must be natural");
  // alpha n = (n + sqrt(5 n^2)) / 2 and floor((a + x)/2) = floor((a + floor x)/2).
  return (n + isqrt(5 * n * n)) / 2;
}

std::uint64_t floor_alpha(std::uint64_t n) {
  return static_cast<std::uint64_t>(floor_alpha(BigInt(n)));
}

BigInt floor_alpha2(const BigInt& n) { return n + floor_alpha(n); }

std::uint64_t floor_alpha2(std::uint64_t n) {
  return static_cast<std::uint64_t>(floor_alpha2(BigInt(n)));
}

}  // namespace fibwalk
