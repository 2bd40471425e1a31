#include "fibwalk/identities.hpp"

#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "fibwalk/exact.hpp"
#include "fibwalk/fibword.hpp"

namespace fibwalk::identities {

namespace {

BigInt F(long n) { return fib(n); }
BigInt L(long n) { return lucas(n); }
long alt(long k) { return (k % 2 == 0) ? 1 : -1; }  // (-1)^k, any sign of k

BigRational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return BigRational(num, den);
}

std::string str(const BigRational& q) { return q.str(); }

constexpr std::size_t kMaxFailures = 8;

long ceil_half(long i) { return (i + 1) / 2; }

}  // namespace

void CheckResult::record(bool ok, const std::string& what) {
  ++checked;
  if (ok) return;
  passed = false;
  if (failures.size() < kMaxFailures) failures.push_back(what);
}

BigInt rho(long i, long j) { return (F(i) - F(j) - 1) * F(j - 2) - (F(j) - 1) * F(i - 2); }
BigInt psi(long i, long j) { return (F(i) - F(2 * j + 1)) * F(2 * j - 1) - F(i - 2) * F(2 * j + 1); }
BigRational f_val(long, long j) { return ratio(F(j) - 1, F(j - 2)); }
BigRational g_val(long i, long j) { return ratio(F(i) - F(j) - 1, F(i - 2)); }
BigRational r_val(long, long j) { return ratio(F(2 * j + 1), F(2 * j - 1)); }
BigRational s_val(long i, long j) { return ratio(F(i) - F(2 * j + 1), F(i - 2)); }

CheckResult check_eq1(long lo, long hi) {
  CheckResult res{"eq1: F_a F_{b+2} - F_{a+2} F_b = (-1)^b F_{a-b}"};
  for (long a = lo; a <= hi; ++a)
    for (long b = lo; b <= hi; ++b)
      res.record(F(a) * F(b + 2) - F(a + 2) * F(b) == alt(b) * F(a - b),
                 "a=" + std::to_string(a) + " b=" + std::to_string(b));
  return res;
}

CheckResult check_lemma3(long i_max) {
  CheckResult res{"lemma3: estimates of F_{i+2}/F_i and (F_{2i+1}+1)/F_{2i-1}"};
  const QuadInt a2 = QuadInt::alpha2();
  for (long i = 1; i <= i_max; ++i) {
    const QuadInt mid(BigRational(F(i + 2), F(i)));
    const QuadInt lo = a2 + QuadInt(BigRational(alt(i), F(2 * i)));
    const QuadInt hi = a2 + QuadInt(BigRational(alt(i), F(2 * i) - alt(i)));
    res.record(lo < mid && mid < hi, "(2) i=" + std::to_string(i));
    const QuadInt mid3(BigRational(F(2 * i + 1) + 1, F(2 * i - 1)));
    const QuadInt lo3 = a2 + QuadInt(BigRational(1, F(2 * i - 1) + 2));
    const QuadInt hi3 = a2 + QuadInt(BigRational(1, F(2 * i - 1)));
    res.record(lo3 < mid3 && mid3 < hi3, "(3) i=" + std::to_string(i));
  }
  return res;
}

std::vector<Lemma4Item> check_lemma4(long k_max) {
  struct Spec {
    const char* statement;
    long threshold;
    std::function<bool(long)> holds;
  };
  const std::vector<Spec> specs = {
      {"(F_{k+1} + 1)^2 <= 3 F_{2k-1}", 4, [](long k) { return (F(k + 1) + 1) * (F(k + 1) + 1) <= 3 * F(2 * k - 1); }},
      {"F_{4k-2}^2 >= 100 F_{2k+1}", 3, [](long k) { return F(4 * k - 2) * F(4 * k - 2) >= 100 * F(2 * k + 1); }},
      {"F_{2k+2} <= 6 F_k^2", 5, [](long k) { return F(2 * k + 2) <= 6 * F(k) * F(k); }},
      {"F_{2k}^2 >= 8 F_{2k+2}", 4, [](long k) { return F(2 * k) * F(2 * k) >= 8 * F(2 * k + 2); }},
      {"F_{12k-4}^2 >= 10000 F_{6k+3}", 2, [](long k) { return F(12 * k - 4) * F(12 * k - 4) >= 10000 * F(6 * k + 3); }},
      {"F_{2k+1}^2 F_{6k+3} <= 6 F_{6k-2}^2", 2,
       [](long k) { return F(2 * k + 1) * F(2 * k + 1) * F(6 * k + 3) <= 6 * F(6 * k - 2) * F(6 * k - 2); }},
      {"F_{4k+2}^2 >= 4 F_{6k+5}", 3, [](long k) { return F(4 * k + 2) * F(4 * k + 2) >= 4 * F(6 * k + 5); }},
  };
  std::vector<Lemma4Item> out;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    Lemma4Item item;
    item.item = static_cast<int>(n + 1);
    item.statement = specs[n].statement;
    item.threshold = specs[n].threshold;
    item.range.name = "lemma4(" + std::to_string(n + 1) + "): " + item.statement;
    for (long k = item.threshold; k <= k_max; ++k) item.range.record(specs[n].holds(k), "k=" + std::to_string(k));
    if (!specs[n].holds(item.threshold - 1)) item.fails_below = item.threshold - 1;
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<CheckResult> check_monotonicity(long i_max) {
  std::vector<CheckResult> out;
  {
    CheckResult c{"f(i,j+1) - f(i,j) = ((-1)^{j+1} + F_{j-3}) / (F_{j-1} F_{j-2}) >= 0, j >= 3"};
    for (long j = 3; j <= i_max; ++j) {
      const BigRational d = f_val(0, j + 1) - f_val(0, j);
      c.record(d == ratio(alt(j + 1) + F(j - 3), F(j - 1) * F(j - 2)) && d >= 0, "j=" + std::to_string(j));
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"g(i,j+1) - g(i,j) = (F_j - F_{j+1}) / F_{i-2} <= 0, i >= 3"};
    for (long i = 3; i <= i_max; ++i)
      for (long j = 3; j + 1 <= i - 2; ++j) {
        const BigRational d = g_val(i, j + 1) - g_val(i, j);
        c.record(d == ratio(F(j) - F(j + 1), F(i - 2)) && d <= 0, "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"rho(i+1,j) - rho(i,j) = F_{i-3} - (-1)^j F_{i-j-1} >= 0"};
    for (long i = 5; i <= i_max; ++i)
      for (long j = 3; j <= i - 2; ++j) {
        const BigInt d = rho(i + 1, j) - rho(i, j);
        c.record(d == F(i - 1) * F(j - 2) - (F(j) - 1) * F(i - 3) && d == F(i - 3) - alt(j) * F(i - j - 1) && d >= 0,
                 "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"r(i,j+1) - r(i,j) = 1 / (F_{2j+1} F_{2j-1}) > 0"};
    for (long j = 1; 2 * j + 3 <= i_max; ++j) {
      const BigRational d = r_val(0, j + 1) - r_val(0, j);
      c.record(d == ratio(1, F(2 * j + 1) * F(2 * j - 1)) && d > 0, "j=" + std::to_string(j));
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"s(i,j+1) - s(i,j) = (F_{2j+1} - F_{2j+3}) / F_{i-2} < 0"};
    for (long i = 5; i <= i_max; ++i)
      for (long j = 1; 2 * (j + 1) <= i - 3; ++j) {
        const BigRational d = s_val(i, j + 1) - s_val(i, j);
        c.record(d == ratio(F(2 * j + 1) - F(2 * j + 3), F(i - 2)) && d < 0,
                 "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"psi(i+1,j) - psi(i,j) = F_{i-1} F_{2j-1} - F_{i-3} F_{2j+1} = F_{i-2j-2} >= 0, i >= 2j+2"};
    for (long j = 1; 2 * j + 2 <= i_max; ++j)
      for (long i = 2 * j + 2; i <= i_max; ++i) {
        const BigInt d = psi(i + 1, j) - psi(i, j);
        const BigInt mid = F(i - 1) * F(2 * j - 1) - F(i - 3) * F(2 * j + 1);
        c.record(d == mid && mid == F(i - 2 * j - 2) && d >= 0, "i=" + std::to_string(i) + " j=" + std::to_string(j));
      }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// lhs == numerator / denominator with the numerator divisible by the denominator.
void record_form(CheckResult& c, long k, const BigRational& lhs, const BigInt& numerator, long denominator) {
  const bool divisible = numerator % denominator == 0;
  c.record(divisible && lhs * denominator == BigRational(numerator), "k=" + std::to_string(k));
}

}  // namespace

std::vector<CheckResult> check_closed_forms(long k_max) {
  std::vector<CheckResult> out;
  {
    CheckResult c{"rho(2k+1,k+1) = (L_{2k-2} - 5F_{k-1} - 5F_{-k} - 3(-1)^k)/5"};
    CheckResult s{"rho(2k+2,k+1) >= rho(2k+1,k+1) > 0, k >= 4"};
    for (long k = 1; k <= k_max; ++k) {
      record_form(c, k, BigRational(rho(2 * k + 1, k + 1)), L(2 * k - 2) - 5 * F(k - 1) - 5 * F(-k) - 3 * alt(k), 5);
      if (k >= 4) s.record(rho(2 * k + 2, k + 1) >= rho(2 * k + 1, k + 1) && rho(2 * k + 1, k + 1) > 0, "k=" + std::to_string(k));
    }
    out.push_back(std::move(c));
    out.push_back(std::move(s));
  }
  {
    CheckResult c{"rho(2k+2,k+2) = (-L_{2k-2} - 5F_k + 5F_{-k} + 3(-1)^k)/5"};
    CheckResult s{"rho(2k+1,k+2) <= rho(2k+2,k+2) < 0, k >= 1"};
    for (long k = 1; k <= k_max; ++k) {
      record_form(c, k, BigRational(rho(2 * k + 2, k + 2)), -L(2 * k - 2) - 5 * F(k) + 5 * F(-k) + 3 * alt(k), 5);
      s.record(rho(2 * k + 1, k + 2) <= rho(2 * k + 2, k + 2) && rho(2 * k + 2, k + 2) < 0, "k=" + std::to_string(k));
    }
    out.push_back(std::move(c));
    out.push_back(std::move(s));
  }
  {
    // the displayed range starts at k = 0, where f(1,2) divides by F_0
    CheckResult c{"F_k F_{2k-1} (f(2k+1,k+2) - g(2k+1,k+1)) = (-2(-1)^k + 2L_{2k-3} + 10F_k + 5F_{-k} + 5L_{-k})/10 > 0, k >= 1"};
    for (long k = 1; k <= k_max; ++k) {
      const BigRational lhs = BigRational(F(k) * F(2 * k - 1)) * (f_val(2 * k + 1, k + 2) - g_val(2 * k + 1, k + 1));
      const BigInt num = -2 * alt(k) + 2 * L(2 * k - 3) + 10 * F(k) + 5 * F(-k) + 5 * L(-k);
      const std::size_t before = c.failures.size();
      record_form(c, k, lhs, num, 10);
      if (c.failures.size() == before && lhs <= 0) {
        c.passed = false;
        c.failures.push_back("sign at k=" + std::to_string(k));
      }
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"F_k F_{2k} (g(2k+2,k+1) - f(2k+2,k+2)) = (2(-1)^k + 2L_{2k-1} - 10F_k - 5F_{1-k} + 5L_{1-k})/10 >= 0, k >= 3"};
    for (long k = 1; k <= k_max; ++k) {
      const BigRational lhs = BigRational(F(k) * F(2 * k)) * (g_val(2 * k + 2, k + 1) - f_val(2 * k + 2, k + 2));
      const BigInt num = 2 * alt(k) + 2 * L(2 * k - 1) - 10 * F(k) - 5 * F(1 - k) + 5 * L(1 - k);
      record_form(c, k, lhs, num, 10);
      if (k >= 3 && lhs < 0) {
        c.passed = false;
        c.failures.push_back("sign at k=" + std::to_string(k));
      }
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"psi(6k,k) = (L_{4k-2} - 3)/5"};
    CheckResult d{"psi(6k+5,k+1) = (-L_{4k} - 3)/5"};
    CheckResult up{"psi(6k+5,k) >= ... >= psi(6k,k) >= 0"};
    CheckResult down{"psi(6k,k+1) <= ... <= psi(6k+5,k+1) <= 0"};
    for (long k = 1; k <= k_max; ++k) {
      record_form(c, k, BigRational(psi(6 * k, k)), L(4 * k - 2) - 3, 5);
      record_form(d, k, BigRational(psi(6 * k + 5, k + 1)), -L(4 * k) - 3, 5);
      bool chain_up = psi(6 * k, k) >= 0, chain_down = psi(6 * k + 5, k + 1) <= 0;
      for (long a = 0; a < 5; ++a) {
        chain_up = chain_up && psi(6 * k + a + 1, k) >= psi(6 * k + a, k);
        chain_down = chain_down && psi(6 * k + a, k + 1) <= psi(6 * k + a + 1, k + 1);
      }
      up.record(chain_up, "k=" + std::to_string(k));
      down.record(chain_down, "k=" + std::to_string(k));
    }
    for (auto* r : {&c, &d, &up, &down}) out.push_back(std::move(*r));
  }
  {
    // F_{2k+1} F_{6k+a-2} (r(6k+a,k+1) - s(6k+a,k)), a = 0..3
    struct Display {
      long a;
      long denominator;
      std::function<BigInt(long)> numerator;
    };
    const Display displays[] = {
        {0, 20, [](long k) { return 7 * L(4 * k - 3) + 15 * F(4 * k) + 8; }},
        {1, 5, [](long k) { return -2 * L(4 * k - 3) + 5 * F(4 * k) + 2; }},
        {2, 10, [](long k) { return L(4 * k - 3) + 5 * F(4 * k) + 4; }},
        {3, 20, [](long k) { return -3 * L(4 * k - 3) + 5 * F(4 * k) + 8; }},
    };
    for (const auto& disp : displays) {
      CheckResult c{"i = 6k+" + std::to_string(disp.a) + ": F_{2k+1} F_{6k+" + std::to_string(disp.a) +
                    "-2} (r - s) closed form >= 0"};
      for (long k = 1; k <= k_max; ++k) {
        const long i = 6 * k + disp.a;
        const BigRational lhs = BigRational(F(2 * k + 1) * F(i - 2)) * (r_val(i, k + 1) - s_val(i, k));
        const BigInt expanded = F(i - 2) * F(2 * k + 3) - F(2 * k + 1) * F(i) + F(2 * k + 1) * F(2 * k + 1);
        const BigInt num = disp.numerator(k);
        const bool ok = lhs == BigRational(expanded) && num % disp.denominator == 0 &&
                        expanded * disp.denominator == num && expanded >= 0;
        c.record(ok, "k=" + std::to_string(k));
      }
      out.push_back(std::move(c));
    }
  }
  {
    CheckResult c{"3F_{2k-1} - (F_{k+1}+1)^2 = (8F_{2k-3} + 4F_{2k-2} - 10F_{k+1} - 5 - 2(-1)^k)/5 >= 0, k >= 4"};
    CheckResult d{"6F_k^2 - F_{2k+2} = (3F_{2k-1} - 4F_{2k-2} - 12(-1)^k)/5 >= 0, k >= 5"};
    for (long k = 1; k <= k_max; ++k) {
      const BigInt lhs = 3 * F(2 * k - 1) - (F(k + 1) + 1) * (F(k + 1) + 1);
      record_form(c, k, BigRational(lhs), 8 * F(2 * k - 3) + 4 * F(2 * k - 2) - 10 * F(k + 1) - 5 - 2 * alt(k), 5);
      if (k >= 4 && lhs < 0) c.record(false, "sign at k=" + std::to_string(k));
      const BigInt lhs2 = 6 * F(k) * F(k) - F(2 * k + 2);
      record_form(d, k, BigRational(lhs2), 3 * F(2 * k - 1) - 4 * F(2 * k - 2) - 12 * alt(k), 5);
      if (k >= 5 && lhs2 < 0) d.record(false, "sign at k=" + std::to_string(k));
    }
    out.push_back(std::move(c));
    out.push_back(std::move(d));
  }
  return out;
}

CrossoverTable crossover(long i, Family family) {
  const long i_min = family == Family::B1 ? 6 : 1;
  if (i < i_min) throw std::invalid_argument("crossover: i must be at least " + std::to_string(i_min));
  CrossoverTable t;
  t.i = i;
  t.family = family;
  if (family == Family::B1) {
    t.j_prime = ceil_half(i);
    for (long j = 3; j <= i - 2; ++j) t.rows.push_back({j, f_val(i, j), g_val(i, j)});
  } else {
    t.j_prime = i / 6;
    for (long j = 1; 2 * j <= i - 3; ++j) t.rows.push_back({j, r_val(i, j), s_val(i, j)});
  }
  const long jp = t.j_prime;
  try {
    if (family == Family::B1) {
      const BigRational g0 = g_val(i, jp), f0 = f_val(i, jp), g1 = g_val(i, jp + 1), f1 = f_val(i, jp + 1);
      t.bracket_holds = g0 >= f0 && g1 < f1;
      t.detail = "g(i,j')=" + str(g0) + " f(i,j')=" + str(f0) + " g(i,j'+1)=" + str(g1) + " f(i,j'+1)=" + str(f1);
    } else {
      const BigRational r0 = r_val(i, jp), s0 = s_val(i, jp), r1 = r_val(i, jp + 1), s1 = s_val(i, jp + 1);
      t.bracket_holds = r0 <= s0 && r1 >= s1;
      t.detail = "r(i,j')=" + str(r0) + " s(i,j')=" + str(s0) + " r(i,j'+1)=" + str(r1) + " s(i,j'+1)=" + str(s1);
    }
  } catch (const std::domain_error&) {
    t.bracket_holds = false;
    t.detail = "undefined at j'=" + std::to_string(jp) + " (zero denominator)";
  }
  return t;
}

CheckResult check_crossovers(Family family, long lo, long hi) {
  CheckResult res{family == Family::B1 ? "B1 crossover at j' = ceil(i/2)" : "B2 crossover at j' = floor(i/6)"};
  for (long i = lo; i <= hi; ++i) {
    CrossoverTable t = crossover(i, family);
    res.record(t.bracket_holds, "i=" + std::to_string(i) + ": " + t.detail);
  }
  return res;
}

void write_crossover_csv(std::ostream& os, const CrossoverTable& t) {
  const bool b1 = t.family == Family::B1;
  os << "i,j," << (b1 ? "f,g," : "r,s,") << (b1 ? "f_decimal,g_decimal" : "r_decimal,s_decimal") << '\n';
  char buf[96];
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%.9f,%.9f", static_cast<double>(r.increasing), static_cast<double>(r.decreasing));
    os << t.i << ',' << r.j << ',' << r.increasing.str() << ',' << r.decreasing.str() << ',' << buf << '\n';
  }
}

CheckResult check_exponent_lower_bounds(Family family, long i_max) {
  const bool b1 = family == Family::B1;
  CheckResult res{b1 ? "e(n) >= min(g(i,j'), f(i,j'+1)) on B1" : "e(n) >= min(s(i,j'), r(i,j'+1)) on B2"};
  const long i_min = b1 ? 8 : 5;
  if (i_max < i_min) return res;
  const std::string prefix = generate_prefix(static_cast<std::size_t>(fib_u64(static_cast<int>(i_max))));
  for (long i = i_min; i <= i_max; ++i) {
    BigRational bound;
    if (b1) {
      const long jp = ceil_half(i);
      bound = std::min(g_val(i, jp), f_val(i, jp + 1));
    } else {
      const long jp = i / 6;
      bound = std::min(s_val(i, jp), r_val(i, jp + 1));
    }
    const long j_hi = b1 ? i - 2 : (i - 3) / 2;
    for (long j = b1 ? 3 : 1; j <= j_hi; ++j) {
      const std::uint64_t n = b1 ? fib_u64(static_cast<int>(i)) - fib_u64(static_cast<int>(j)) - 1
                                 : fib_u64(static_cast<int>(i)) - fib_u64(static_cast<int>(2 * j + 1));
      const ExponentRecord e = e_of_prefix(prefix, n);
      res.record(BigRational(e.x, e.y) >= bound, "n=" + std::to_string(n) + " (i=" + std::to_string(i) +
                                                      ", j=" + std::to_string(j) + ") e=" + e.exponent().str());
    }
  }
  return res;
}

}  // namespace fibwalk::identities
