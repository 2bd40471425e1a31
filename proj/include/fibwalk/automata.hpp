#pragma once

// Synchronized DFAs over k-track digit tuples read msd-first.
//
// A letter is a k-bit mask: bit t is the digit on track t. Every automaton
// produced here is complete, has the dead sink at state 0, accepts only
// words whose tracks are all valid Zeckendorf strings (no "11"), and is
// closed under prepending the all-zero letter. Operations return minimal
// automata in canonical numbering (dead = 0, live states in BFS order from
// the initial state), so equal languages give identical objects.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibwalk::automata {

using State = std::uint32_t;
using Letter = std::uint32_t;

inline constexpr State kDead = 0;
inline constexpr int kMaxArity = 14;

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyncDFA {
 public:
  SyncDFA() : SyncDFA(0, 1) {}
  /// All transitions go to the dead state; initial state is 0.
  SyncDFA(int arity, std::size_t num_states);

  int arity() const { return arity_; }
  std::size_t alphabet_size() const { return std::size_t{1} << arity_; }
  std::size_t num_states() const { return accepting_.size(); }
  /// States other than the dead sink.
  std::size_t live_states() const { return num_states() - 1; }

  State initial() const { return initial_; }
  void set_initial(State s) { initial_ = s; }

  State next(State s, Letter l) const { return delta_[(static_cast<std::size_t>(s) << arity_) | l]; }
  void set_next(State s, Letter l, State t) { delta_[(static_cast<std::size_t>(s) << arity_) | l] = t; }
  std::span<const State> row(State s) const {
    return {delta_.data() + (static_cast<std::size_t>(s) << arity_), alphabet_size()};
  }

  bool accepting(State s) const { return accepting_[s] != 0; }
  void set_accepting(State s, bool acc) { accepting_[s] = acc ? 1 : 0; }

  State run(std::span<const Letter> word) const;
  bool accepts(std::span<const Letter> word) const { return accepting(run(word)); }
  /// Accepts the tuple of naturals (one per track) in padded msd_fib form.
  bool accepts_values(std::span<const std::uint64_t> values) const;

  friend bool operator==(const SyncDFA&, const SyncDFA&) = default;

 private:
  int arity_;
  State initial_ = 0;
  std::vector<State> delta_;
  std::vector<std::uint8_t> accepting_;
};

/// Padded msd-first letters for a tuple of naturals.
std::vector<Letter> encode_tuple(std::span<const std::uint64_t> values);
/// Inverse of encode_tuple (leading zero letters allowed).
std::vector<std::uint64_t> decode_tuple(std::span<const Letter> word, int arity);

// ---- construction -------------------------------------------------------

/// All tuples of canonical strings ("no 11" on every track).
SyncDFA validity(int arity);
SyncDFA empty_language(int arity);
/// Arity-0 automaton for a truth value.
SyncDFA constant(bool value);

// ---- algebra -------------------------------------------------------------

enum class BoolOp { And, Or, Implies, Iff, Xor, AndNot };

bool apply(BoolOp op, bool a, bool b);

SyncDFA product(const SyncDFA& a, const SyncDFA& b, BoolOp op);
SyncDFA complement(const SyncDFA& a);

/// Existentially quantify the listed tracks (projection, then leading-zero
/// closure of the remaining tracks, determinization and minimization).
/// Remaining tracks keep their relative order.
SyncDFA project(const SyncDFA& a, std::vector<int> tracks);
SyncDFA project(const SyncDFA& a, int track);

/// Re-index tracks: source track t reads target track target_of[t].
/// Several source tracks may share a target (they are then forced equal);
/// targets not hit by any source are unconstrained canonical strings.
SyncDFA remap(const SyncDFA& a, std::span<const int> target_of, int new_arity);

/// Unique minimal complete DFA by Hopcroft partition refinement.
SyncDFA minimize(const SyncDFA& a);
/// Same result by Moore's iterated signature refinement (cross-check).
SyncDFA minimize_moore(const SyncDFA& a);

bool is_empty(const SyncDFA& a);
/// Verdict of an arity-0 automaton.
bool decide(const SyncDFA& a);

/// Structural checks: totality and the dead-sink convention.
bool is_well_formed(const SyncDFA& a);

// ---- relations -----------------------------------------------------------

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

/// x + y = z over tracks (x, y, z).
SyncDFA adder();
/// x REL y over tracks (x, y), by padded msd-lexicographic comparison.
SyncDFA comparator(Rel rel);
/// y = c x over tracks (x, y), composed from c - 1 chained adders.
SyncDFA const_multiple(unsigned c);
/// sum_t coeffs[t] * x_t + constant REL 0.
SyncDFA linear_relation(std::span<const long> coeffs, long constant, Rel rel);

// ---- automatic sequences -------------------------------------------------

/// Deterministic automaton with output reading one msd-first digit track.
/// Outputs must not change under leading zeros.
struct Dfao {
  State initial = 0;
  std::vector<std::array<State, 2>> delta;
  std::vector<long> output;

  long eval(std::span<const Letter> digits) const;
  long at(std::uint64_t n) const;
};

/// Tracks (a, b): x[a] REL y[b].
SyncDFA sequence_relation(const Dfao& x, const Dfao& y, Rel rel);
/// Track (a): x[a] REL c.
SyncDFA sequence_constant(const Dfao& x, Rel rel, long c);

// ---- queries and I/O -----------------------------------------------------

/// Accepted naturals <= limit, ascending (arity 1).
std::vector<std::uint64_t> enumerate(const SyncDFA& a, std::uint64_t limit);
/// Accepted tuples with every component <= limit, ascending lexicographically.
std::vector<std::vector<std::uint64_t>> enumerate_tuples(const SyncDFA& a, std::uint64_t limit);
/// First `count` accepted tuples in shortlex order of canonical padded words.
std::vector<std::vector<std::uint64_t>> first_accepted(const SyncDFA& a, std::size_t count,
                                                       std::size_t max_length = 90);

std::string letter_label(Letter l, int arity);
void write_dot(std::ostream& os, const SyncDFA& a, const std::string& name);
void write_text(std::ostream& os, const SyncDFA& a);
SyncDFA read_text(std::istream& is);

}  // namespace fibwalk::automata
