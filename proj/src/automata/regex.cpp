#include "fibwalk/regex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace fibwalk {

using automata::Letter;
using automata::State;
using automata::SyncDFA;

namespace {

// Thompson NFA: each state has at most one letter edge or up to two epsilons.
struct Nfa {
  struct Node {
    std::optional<Letter> letter;
    int on_letter = -1;
    std::vector<int> eps;
  };
  std::vector<Node> nodes;
  int add() {
    nodes.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }
};

struct Fragment {
  int start;
  int accept;
};

class RegexParser {
 public:
  RegexParser(std::string_view text, int arity, Nfa& nfa) : text_(text), arity_(arity), nfa_(nfa) {}

  Fragment parse() {
    Fragment f = alternation();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw RegexError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Fragment epsilon() {
    int s = nfa_.add();
    int e = nfa_.add();
    nfa_.nodes[s].eps.push_back(e);
    return {s, e};
  }

  Fragment alternation() {
    Fragment left = concatenation();
    while (peek('|')) {
      ++pos_;
      Fragment right = concatenation();
      int s = nfa_.add();
      int e = nfa_.add();
      nfa_.nodes[s].eps = {left.start, right.start};
      nfa_.nodes[left.accept].eps.push_back(e);
      nfa_.nodes[right.accept].eps.push_back(e);
      left = {s, e};
    }
    return left;
  }

  Fragment concatenation() {
    std::optional<Fragment> acc;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == '|' || text_[pos_] == ')') break;
      Fragment next = repetition();
      if (!acc) {
        acc = next;
      } else {
        nfa_.nodes[acc->accept].eps.push_back(next.start);
        acc->accept = next.accept;
      }
    }
    return acc ? *acc : epsilon();
  }

  Fragment repetition() {
    Fragment f = atom();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char c = text_[pos_];
      if (c != '*' && c != '+' && c != '?') break;
      ++pos_;
      int s = nfa_.add();
      int e = nfa_.add();
      nfa_.nodes[s].eps.push_back(f.start);
      if (c != '+') nfa_.nodes[s].eps.push_back(e);
      nfa_.nodes[f.accept].eps.push_back(e);
      if (c != '?') nfa_.nodes[f.accept].eps.push_back(f.start);
      f = {s, e};
    }
    return f;
  }

  Fragment letter_fragment(Letter l) {
    int s = nfa_.add();
    int e = nfa_.add();
    nfa_.nodes[s].letter = l;
    nfa_.nodes[s].on_letter = e;
    return {s, e};
  }

  Fragment atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of pattern");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fragment f = alternation();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return f;
    }
    if (c == '0' || c == '1') {
      if (arity_ != 1) fail("bare digit in a pattern over " + std::to_string(arity_) + " tracks");
      ++pos_;
      return letter_fragment(c == '1' ? 1U : 0U);
    }
    if (c == '[') {
      ++pos_;
      Letter l = 0;
      int track = 0;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated tuple");
        char d = text_[pos_];
        if (d != '0' && d != '1') fail("expected digit in tuple");
        if (track >= arity_) fail("tuple has more than " + std::to_string(arity_) + " components");
        if (d == '1') l |= Letter{1} << track;
        ++track;
        ++pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']' in tuple");
      }
      if (track != arity_) fail("tuple has " + std::to_string(track) + " components, expected " + std::to_string(arity_));
      return letter_fragment(l);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int arity_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

std::vector<int> closure(const Nfa& nfa, std::vector<int> set) {
  std::vector<char> in(nfa.nodes.size(), 0);
  for (int s : set) in[s] = 1;
  for (std::size_t k = 0; k < set.size(); ++k)
    for (int t : nfa.nodes[set[k]].eps)
      if (!in[t]) {
        in[t] = 1;
        set.push_back(t);
      }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

SyncDFA compile_regex_raw(std::string_view pattern, int arity) {
  if (arity < 1 || arity > automata::kMaxArity) throw RegexError("arity out of range", 0);
  Nfa nfa;
  Fragment f = RegexParser(pattern, arity, nfa).parse();
  const Letter letters = Letter{1} << arity;

  std::map<std::vector<int>, State> ids;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> s) {
    auto [it, ins] = ids.emplace(s, static_cast<State>(sets.size()));
    if (ins) sets.push_back(std::move(s));
    return it->second;
  };
  intern({});
  State init = intern(closure(nfa, {f.start}));
  std::vector<State> delta;
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (Letter l = 0; l < letters; ++l) {
      std::vector<int> step;
      for (int s : sets[k])
        if (nfa.nodes[s].letter && *nfa.nodes[s].letter == l) step.push_back(nfa.nodes[s].on_letter);
      delta.push_back(step.empty() ? automata::kDead : intern(closure(nfa, std::move(step))));
    }
  SyncDFA dfa(arity, sets.size());
  dfa.set_initial(init);
  for (State s = 0; s < sets.size(); ++s) {
    dfa.set_accepting(s, std::binary_search(sets[s].begin(), sets[s].end(), f.accept));
    for (Letter l = 0; l < letters; ++l) dfa.set_next(s, l, delta[s * letters + l]);
  }
  return automata::minimize(dfa);
}

SyncDFA compile_regex(std::string_view pattern, int arity) {
  return automata::product(compile_regex_raw(pattern, arity), automata::validity(arity), automata::BoolOp::And);
}

}  // namespace fibwalk
