#pragma once

// Walnut-style predicate language over msd_fib numbers.
//
// Grammar, from weakest to tightest binding:
//   formula  := ("A" | "E") var ("," var)* formula      (body extends right)
//             | iff
//   iff      := implies ("<=>" implies)*
//   implies  := or ("=>" implies)?
//   or       := and ("|" and)*
//   and      := unary ("&" unary)*
//   unary    := "~" unary | quantified | atom | "(" formula ")"
//   atom     := term rel term | seq rel seq | "$" name "(" term,* ")"
//   seq      := NAME "[" term "]" | "@" natural | natural
//   term     := product (("+" | "-") product)*
//   product  := natural "*" factor | factor ("*" natural)?
//   factor   := var | natural | "(" term ")"
// Variables are lowercase identifiers; sequence names start uppercase.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fibwalk/automata.hpp"

namespace fibwalk::logic {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourcePos pos);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Term {
  enum class Kind { Var, Const, Add, Sub, Scale };
  Kind kind = Kind::Const;
  std::string var;
  std::uint64_t value = 0;  // Const value, or Scale factor
  std::vector<Term> args;   // Add/Sub: two operands; Scale: one

  static Term variable(std::string name);
  static Term constant(std::uint64_t v);
  static Term binary(Kind k, Term a, Term b);
  static Term scale(std::uint64_t c, Term t);
};

/// One side of a sequence comparison: seq[index] or a literal value.
struct SeqSide {
  std::string sequence;  // empty for a literal
  Term index;
  long literal = 0;
};

struct Formula {
  enum class Kind { True, False, Compare, SeqCompare, Call, Not, And, Or, Implies, Iff, Exists, Forall };
  Kind kind = Kind::True;
  automata::Rel rel = automata::Rel::Eq;
  std::vector<Term> terms;         // Compare: {lhs, rhs}; Call: arguments
  std::vector<SeqSide> sides;      // SeqCompare: {lhs, rhs}
  std::string name;                // Call: predicate name
  std::vector<std::string> vars;   // Exists/Forall
  std::vector<Formula> kids;
  SourcePos pos;
};

struct Command {
  enum class Kind { Reg, Def, Eval, Test };
  Kind kind = Kind::Eval;
  std::string name;
  std::vector<std::string> tracks;  // Reg: per-track alphabet tags ("msd_fib" or "{0,1}")
  std::string text;                 // Reg: regex; Def/Eval: formula source without the tag
  Formula formula;                  // Def/Eval
  std::size_t count = 0;            // Test
  SourcePos pos;
};

/// Parses a script. `known` lists predicate names bound before the script
/// starts; names bound by earlier commands of the script are added in order.
std::vector<Command> parse(std::string_view source, const std::vector<std::string>& known = {});
/// Parses a formula body (after the numeration tag).
Formula parse_formula(std::string_view text, const std::vector<std::string>& known = {});

/// Free variables, sorted; this is also the track order of compiled formulas.
std::vector<std::string> free_variables(const Formula& f);

struct Predicate {
  std::string name;
  Command::Kind kind = Command::Kind::Def;
  automata::SyncDFA dfa;
  std::vector<std::string> params;  // Def: free variables in track order
  Command source;
};

class PredicateEnv {
 public:
  /// Throws CompileError when the name is already bound.
  void bind(Predicate p);
  const Predicate* find(const std::string& name) const;
  const Predicate& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Predicate> preds_;
};

using SequenceEnv = std::map<std::string, automata::Dfao>;

/// Sequences available to formulas by default: F is the Fibonacci word.
SequenceEnv default_sequences();

struct Compiled {
  automata::SyncDFA dfa;
  std::vector<std::string> vars;  // track t holds vars[t]
};

Compiled compile(const Formula& f, const PredicateEnv& env, const SequenceEnv& seqs = default_sequences());
automata::SyncDFA compile_reg(const Command& reg);

struct CommandResult {
  std::size_t index = 0;
  Command::Kind kind = Command::Kind::Eval;
  std::string name;
  int arity = 0;
  std::size_t states = 0;
  std::vector<std::string> params;
  std::optional<bool> verdict;                       // closed eval
  std::vector<std::vector<std::uint64_t>> listing;   // test
};

class SessionError : public std::runtime_error {
 public:
  SessionError(std::size_t command_index, const std::string& msg);
  std::size_t command_index() const { return index_; }

 private:
  std::size_t index_;
};

class Session {
 public:
  explicit Session(SequenceEnv seqs = default_sequences());

  /// Parses the whole script first, then executes commands in order.
  std::vector<CommandResult> run(std::string_view script);
  CommandResult execute(const Command& cmd);

  const PredicateEnv& env() const { return env_; }
  const automata::SyncDFA& automaton(const std::string& name) const { return env_.at(name).dfa; }
  /// Automaton of the most recent eval with the given name.
  const Compiled* eval_result(const std::string& name) const;

 private:
  PredicateEnv env_;
  SequenceEnv seqs_;
  std::map<std::string, Compiled> evals_;
  std::size_t executed_ = 0;
};

std::string format_report(const std::vector<CommandResult>& results);
nlohmann::json report_json(const std::vector<CommandResult>& results);

}  // namespace fibwalk::logic
