#pragma once

// Exact real-number comparisons for the golden-ratio field Q(sqrt5) and for
// small integer combinations of square roots.

#include <string>
#include <vector>

#include "fibwalk/numeration.hpp"

namespace fibwalk {

/// a + b*sqrt(5) with rational a, b.
class QuadInt {
 public:
  QuadInt() = default;
  QuadInt(BigRational a, BigRational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  QuadInt(long a) : a_(a) {}

  static QuadInt alpha();   // (1 + sqrt5)/2
  static QuadInt beta();    // (1 - sqrt5)/2
  static QuadInt alpha2();  // (3 + sqrt5)/2

  const BigRational& rational_part() const { return a_; }
  const BigRational& sqrt5_part() const { return b_; }

  /// -1, 0 or +1. Decided by comparing a^2 with 5 b^2 when a and b differ in sign.
  int sign() const;

  /// Multiplicative inverse; throws std::domain_error on zero.
  QuadInt inverse() const;

  long double approx() const;
  std::string str() const;

  friend QuadInt operator+(const QuadInt& x, const QuadInt& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend QuadInt operator-(const QuadInt& x, const QuadInt& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend QuadInt operator-(const QuadInt& x) { return {-x.a_, -x.b_}; }
  friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    return {x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
  }
  friend QuadInt operator/(const QuadInt& x, const QuadInt& y) { return x * y.inverse(); }
  friend bool operator==(const QuadInt& x, const QuadInt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QuadInt& x, const QuadInt& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const QuadInt& x, const QuadInt& y) { return (x - y).sign() <= 0; }
  friend bool operator>(const QuadInt& x, const QuadInt& y) { return (x - y).sign() > 0; }
  friend bool operator>=(const QuadInt& x, const QuadInt& y) { return (x - y).sign() >= 0; }

 private:
  BigRational a_ = 0;
  BigRational b_ = 0;
};

/// sum of coef_i * sqrt(radicand_i) with integer coefficients and natural
/// radicands. The sign is certified: radicands are reduced to square-free
/// parts (distinct square-free roots are linearly independent over Q, so the
/// sum is zero iff every collected coefficient is), then evaluated with
/// integer square roots at doubling binary precision until the error
/// interval excludes zero.
class RadicalSum {
 public:
  struct Term {
    BigInt coef;
    BigInt radicand;
  };

  RadicalSum& add(BigInt coef, BigInt radicand);

  int sign() const;
  long double approx() const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// Sign of x/y - alpha^2 for natural x, positive y.
int compare_with_alpha2(const BigInt& x, const BigInt& y);

}  // namespace fibwalk
