#include "fibwalk/exact.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace fibwalk {

namespace {

int sign_of(const BigRational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

// n = square^2 * squarefree; returns {square, squarefree}.
std::pair<BigInt, BigInt> split_square(const BigInt& n) {
  if (n <= 1) return {BigInt(1), n};
  if (n > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw std::domain_error("RadicalSum: radicand too large to factor");
  auto m = static_cast<std::uint64_t>(n);
  std::uint64_t square = 1;
  std::uint64_t free_part = 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) square *= d;
    if (e % 2 == 1) free_part *= d;
  }
  free_part *= m;
  return {BigInt(square), BigInt(free_part)};
}

}  // namespace

QuadInt QuadInt::alpha() { return {BigRational(1, 2), BigRational(1, 2)}; }
QuadInt QuadInt::beta() { return {BigRational(1, 2), BigRational(-1, 2)}; }
QuadInt QuadInt::alpha2() { return {BigRational(3, 2), BigRational(1, 2)}; }

int QuadInt::sign() const {
  int sa = sign_of(a_);
  int sb = sign_of(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: the larger magnitude of |a| vs |b| sqrt5 wins.
  BigRational lhs = a_ * a_;
  BigRational rhs = 5 * b_ * b_;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;  // unreachable for rational a, b: sqrt5 is irrational
}

QuadInt QuadInt::inverse() const {
  BigRational norm = a_ * a_ - 5 * b_ * b_;
  if (norm == 0) throw std::domain_error("QuadInt: inverse of zero");
  return {a_ / norm, -b_ / norm};
}

long double QuadInt::approx() const {
  return static_cast<long double>(a_) + static_cast<long double>(b_) * std::sqrt(5.0L);
}

std::string QuadInt::str() const {
  std::ostringstream os;
  os << a_ << " + " << b_ << "*sqrt5";
  return os.str();
}

RadicalSum& RadicalSum::add(BigInt coef, BigInt radicand) {
  if (radicand < 0) throw std::domain_error("RadicalSum: negative radicand");
  terms_.push_back({std::move(coef), std::move(radicand)});
  return *this;
}

int RadicalSum::sign() const {
  std::map<BigInt, BigInt> grouped;
  for (const auto& t : terms_) {
    if (t.coef == 0 || t.radicand == 0) continue;
    auto [sq, free_part] = split_square(t.radicand);
    grouped[free_part] += t.coef * sq;
  }
  for (auto it = grouped.begin(); it != grouped.end();) {
    if (it->second == 0)
      it = grouped.erase(it);
    else
      ++it;
  }
  if (grouped.empty()) return 0;
  if (grouped.size() == 1) return grouped.begin()->second < 0 ? -1 : 1;

  for (unsigned bits = 32;; bits *= 2) {
    BigInt lo = 0;
    BigInt hi = 0;
    for (const auto& [rad, coef] : grouped) {
      // r <= sqrt(rad) * 2^bits < r + 1
      BigInt r = isqrt(rad << (2 * bits));
      if (coef > 0) {
        lo += coef * r;
        hi += coef * (r + 1);
      } else {
        lo += coef * (r + 1);
        hi += coef * r;
      }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (bits > (1u << 20)) throw std::runtime_error("RadicalSum: precision limit exceeded");
  }
}

long double RadicalSum::approx() const {
  long double s = 0;
  for (const auto& t : terms_)
    s += static_cast<long double>(t.coef) * std::sqrt(static_cast<long double>(t.radicand));
  return s;
}

int compare_with_alpha2(const BigInt& x, const BigInt& y) {
  if (y <= 0) throw std::domain_error("compare_with_alpha2: denominator must be positive");
  // x/y - (3 + sqrt5)/2 has the sign of (2x - 3y) - y sqrt5
  return QuadInt(BigRational(2 * x - 3 * y), BigRational(-y)).sign();
}

}  // namespace fibwalk
