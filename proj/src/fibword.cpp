#include "fibwalk/fibword.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fibwalk/exact.hpp"

namespace fibwalk {

Fraction::Fraction(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Fraction::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

std::string generate_prefix(std::size_t n) {
  // X_1 = 1, X_2 = 0, X_k = X_{k-1} X_{k-2}; every X_k with k >= 2 is a prefix of f
  std::string prev = "1", cur = "0";
  while (cur.size() < n) {
    std::string next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  cur.resize(n);
  return cur;
}

int symbol_at(std::uint64_t n) {
  const std::string rep = zeck_encode(n);
  return (!rep.empty() && rep.back() == '1') ? 1 : 0;
}

automata::Dfao fibonacci_dfao() {
  automata::Dfao d;
  d.initial = 0;
  d.delta = {{0, 1}, {0, 1}};
  d.output = {0, 1};
  return d;
}

std::vector<std::size_t> border_array(std::string_view w) {
  std::vector<std::size_t> border(w.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  return border;
}

std::size_t least_period(std::string_view w) {
  if (w.empty()) throw std::invalid_argument("least_period: empty word");
  return w.size() - border_array(w).back();
}

Fraction exponent(std::string_view w) { return {w.size(), least_period(w)}; }

bool is_alpha_power(std::string_view w, const Quadratic& alpha) {
  if (w.empty()) throw std::invalid_argument("is_alpha_power: empty word");
  if (alpha.c <= 0 || alpha.d < 0) throw std::invalid_argument("is_alpha_power: malformed quadratic");
  const BigInt per = least_period(w);
  const BigInt len = w.size();
  // sign of alpha * per - m, scaled by c > 0
  auto cmp = [&](const BigInt& m) {
    RadicalSum s;
    s.add(alpha.a * per - m * alpha.c, 1).add(alpha.b * per, alpha.d);
    return s.sign();
  };
  return cmp(len) <= 0 && cmp(len - 1) > 0;
}

ExponentRecord e_of_prefix(std::string_view prefix, std::size_t n) {
  if (n == 0) throw std::invalid_argument("e(n) needs n >= 1");
  if (prefix.size() < n) throw std::invalid_argument("e(n): prefix too short");
  // suffixes of f[0..n-1] reversed are the prefixes of the reversed word,
  // and a word has the same periods as its reversal
  std::string rev(prefix.substr(0, n));
  std::reverse(rev.begin(), rev.end());
  const auto border = border_array(rev);
  ExponentRecord best{n, 1, 1};
  for (std::size_t x = 1; x <= n; ++x) {
    const std::size_t y = x - border[x];
    if (static_cast<unsigned __int128>(x) * best.y > static_cast<unsigned __int128>(best.x) * y) {
      best.x = x;
      best.y = y;
    }
  }
  return best;
}

ExponentRecord e_of_n(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("e(n) needs n >= 1");
  return e_of_prefix(generate_prefix(n), n);
}

unsigned default_threads() {
  if (const char* env = std::getenv("FIBWALK_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<ExponentRecord> e_sweep(std::uint64_t first, std::uint64_t last, unsigned threads) {
  if (first == 0) throw std::invalid_argument("e_sweep: n starts at 1");
  if (last < first) return {};
  const std::string prefix = generate_prefix(last);
  std::vector<ExponentRecord> out(last - first + 1);
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, out.size()));
  auto work = [&](unsigned id) {
    for (std::size_t k = id; k < out.size(); k += threads) out[k] = e_of_prefix(prefix, first + k);
  };
  if (threads <= 1) {
    work(0);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& t : pool) t.join();
  return out;
}

std::set<std::size_t> factor_periods(std::size_t N) {
  const std::string w = generate_prefix(N);
  std::set<std::size_t> periods;
  for (std::size_t i = 0; i < N; ++i) {
    const auto border = border_array(std::string_view(w).substr(i));
    for (std::size_t len = 1; len <= N - i; ++len) periods.insert(len - border[len]);
  }
  return periods;
}

bool check_periods_fibonacci(std::size_t N) {
  for (std::size_t p : factor_periods(N)) {
    if (p == 0) return false;
    if (fib_u64(fib_index_floor(p)) != p) return false;
  }
  return true;
}

void write_exponent_csv(std::ostream& os, const std::vector<ExponentRecord>& records) {
  os << "n,x,y,exponent,decimal\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.9Lf", r.exponent().approx());
    os << r.n << ',' << r.x << ',' << r.y << ',' << r.exponent().str() << ',' << buf << '\n';
  }
}

}  // namespace fibwalk
