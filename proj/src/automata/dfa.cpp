#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "builder.hpp"
#include "fibwalk/automata.hpp"
#include "fibwalk/numeration.hpp"

namespace fibwalk::automata {

SyncDFA::SyncDFA(int arity, std::size_t num_states) : arity_(arity) {
  if (arity < 0 || arity > kMaxArity) throw AutomatonError("arity out of range: " + std::to_string(arity));
  if (num_states == 0) throw AutomatonError("automaton needs at least the dead state");
  delta_.assign(num_states << arity, kDead);
  accepting_.assign(num_states, 0);
}

State SyncDFA::run(std::span<const Letter> word) const {
  State s = initial_;
  for (Letter l : word) s = next(s, l);
  return s;
}

bool SyncDFA::accepts_values(std::span<const std::uint64_t> values) const {
  if (values.size() != static_cast<std::size_t>(arity_)) throw AutomatonError("accepts_values: arity mismatch");
  return accepts(encode_tuple(values));
}

std::vector<Letter> encode_tuple(std::span<const std::uint64_t> values) {
  std::vector<std::string> reps;
  std::size_t len = 0;
  for (auto v : values) {
    reps.push_back(zeck_encode(v));
    len = std::max(len, reps.back().size());
  }
  std::vector<Letter> word(len, 0);
  for (std::size_t t = 0; t < reps.size(); ++t) {
    const std::string& r = reps[t];
    std::size_t pad = len - r.size();
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] == '1') word[pad + i] |= Letter{1} << t;
  }
  return word;
}

std::vector<std::uint64_t> decode_tuple(std::span<const Letter> word, int arity) {
  std::vector<std::uint64_t> values(static_cast<std::size_t>(arity), 0);
  const std::size_t len = word.size();
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t weight = len - i + 1;
    for (int t = 0; t < arity; ++t) {
      if ((word[i] >> t) & 1U) {
        if (weight > 93) throw AutomatonError("decode_tuple: value exceeds 64 bits");
        values[static_cast<std::size_t>(t)] += fib_u64(static_cast<int>(weight));
      }
    }
  }
  return values;
}

SyncDFA validity(int arity) {
  // state key: mask of tracks whose previous digit was 1
  return minimize(detail::build_reachable(
      arity, Letter{0},
      [](const Letter& prev, Letter l) -> std::optional<Letter> {
        if (prev & l) return std::nullopt;
        return l;
      },
      [](const Letter&) { return true; }));
}

SyncDFA empty_language(int arity) {
  SyncDFA a(arity, 1);
  a.set_initial(kDead);
  return a;
}

SyncDFA constant(bool value) { return value ? validity(0) : empty_language(0); }

bool is_well_formed(const SyncDFA& a) {
  if (a.num_states() == 0 || a.initial() >= a.num_states()) return false;
  if (a.accepting(kDead)) return false;
  for (State s = 0; s < a.num_states(); ++s)
    for (State t : a.row(s))
      if (t >= a.num_states()) return false;
  for (State t : a.row(kDead))
    if (t != kDead) return false;
  return true;
}

bool apply(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::And: return a && b;
    case BoolOp::Or: return a || b;
    case BoolOp::Implies: return !a || b;
    case BoolOp::Iff: return a == b;
    case BoolOp::Xor: return a != b;
    case BoolOp::AndNot: return a && !b;
  }
  return false;
}

std::string letter_label(Letter l, int arity) {
  std::string s = "[";
  for (int t = 0; t < arity; ++t) {
    if (t) s += ',';
    s += ((l >> t) & 1U) ? '1' : '0';
  }
  s += ']';
  return s;
}

void write_dot(std::ostream& os, const SyncDFA& a, const std::string& name) {
  os << "digraph " << '"' << name << '"' << " {\n";
  os << "  rankdir = LR;\n";
  os << "  node [shape = circle];\n";
  for (State s = 1; s < a.num_states(); ++s)
    os << "  " << s << " [shape = " << (a.accepting(s) ? "doublecircle" : "circle") << "];\n";
  os << "  init [shape = point];\n";
  os << "  init -> " << a.initial() << ";\n";
  for (State s = 1; s < a.num_states(); ++s)
    for (Letter l = 0; l < a.alphabet_size(); ++l) {
      State t = a.next(s, l);
      if (t == kDead) continue;
      os << "  " << s << " -> " << t << " [label = \"" << letter_label(l, a.arity()) << "\"];\n";
    }
  os << "}\n";
}

void write_text(std::ostream& os, const SyncDFA& a) {
  os << "arity " << a.arity() << "\n";
  os << "states " << a.num_states() << "\n";
  os << "initial " << a.initial() << "\n";
  os << "accepting";
  for (State s = 0; s < a.num_states(); ++s)
    if (a.accepting(s)) os << ' ' << s;
  os << "\n";
  for (State s = 0; s < a.num_states(); ++s)
    for (Letter l = 0; l < a.alphabet_size(); ++l)
      os << s << ' ' << letter_label(l, a.arity()) << ' ' << a.next(s, l) << "\n";
}

namespace {

void expect_word(std::istream& is, const std::string& word) {
  std::string got;
  if (!(is >> got) || got != word) throw AutomatonError("read_text: expected '" + word + "'");
}

Letter parse_label(const std::string& label, int arity) {
  if (label.size() < 2 || label.front() != '[' || label.back() != ']')
    throw AutomatonError("read_text: bad letter label " + label);
  Letter l = 0;
  int t = 0;
  for (std::size_t i = 1; i + 1 < label.size(); ++i) {
    char c = label[i];
    if (c == ',') continue;
    if (c != '0' && c != '1') throw AutomatonError("read_text: bad letter label " + label);
    if (c == '1') l |= Letter{1} << t;
    ++t;
  }
  if (t != arity) throw AutomatonError("read_text: label arity mismatch in " + label);
  return l;
}

}  // namespace

SyncDFA read_text(std::istream& is) {
  int arity = 0;
  std::size_t states = 0;
  State initial = 0;
  expect_word(is, "arity");
  is >> arity;
  expect_word(is, "states");
  is >> states;
  expect_word(is, "initial");
  is >> initial;
  if (!is) throw AutomatonError("read_text: malformed header");
  SyncDFA a(arity, states);
  if (initial >= states) throw AutomatonError("read_text: initial state out of range");
  a.set_initial(initial);
  expect_word(is, "accepting");
  std::string line;
  std::getline(is, line);
  std::istringstream acc(line);
  State s = 0;
  while (acc >> s) {
    if (s >= states) throw AutomatonError("read_text: accepting state out of range");
    a.set_accepting(s, true);
  }
  std::string label;
  State t = 0;
  while (is >> s >> label >> t) {
    if (s >= states || t >= states) throw AutomatonError("read_text: transition state out of range");
    a.set_next(s, parse_label(label, arity), t);
  }
  if (!is_well_formed(a)) throw AutomatonError("read_text: automaton violates dead-state convention");
  return a;
}

}  // namespace fibwalk::automata
