#include <algorithm>
#include <limits>
#include <set>

#include "fibwalk/fibword.hpp"
#include "fibwalk/logic.hpp"
#include "fibwalk/regex.hpp"

namespace fibwalk::logic {

using automata::BoolOp;
using automata::Rel;
using automata::SyncDFA;

void PredicateEnv::bind(Predicate p) {
  const std::string name = p.name;
  if (!preds_.emplace(name, std::move(p)).second) throw CompileError("predicate '" + name + "' is already defined");
}

const Predicate* PredicateEnv::find(const std::string& name) const {
  auto it = preds_.find(name);
  return it == preds_.end() ? nullptr : &it->second;
}

const Predicate& PredicateEnv::at(const std::string& name) const {
  const Predicate* p = find(name);
  if (!p) throw CompileError("unbound predicate '" + name + "'");
  return *p;
}

std::vector<std::string> PredicateEnv::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : preds_) out.push_back(k);
  return out;
}

SequenceEnv default_sequences() { return {{"F", fibonacci_dfao()}}; }

SyncDFA compile_reg(const Command& reg) {
  return compile_regex(reg.text, static_cast<int>(reg.tracks.size()));
}

namespace {

constexpr long kMaxCoefficient = 1L << 40;

long checked(long v) {
  if (v > kMaxCoefficient || v < -kMaxCoefficient) throw CompileError("term coefficient out of range");
  return v;
}

// sum coef[v] * v + constant
struct Linear {
  std::map<std::string, long> coef;
  long constant = 0;

  Linear& add(const Linear& o, long k) {
    for (const auto& [v, c] : o.coef) coef[v] = checked(coef[v] + k * c);
    constant = checked(constant + k * o.constant);
    return *this;
  }
};

// A term's linear form plus the nonnegativity guards of its subtractions.
struct Expanded {
  Linear form;
  std::vector<Linear> guards;  // each must be >= 0
};

Expanded expand(const Term& t) {
  Expanded e;
  switch (t.kind) {
    case Term::Kind::Var:
      e.form.coef[t.var] = 1;
      return e;
    case Term::Kind::Const:
      if (t.value > static_cast<std::uint64_t>(kMaxCoefficient)) throw CompileError("constant out of range");
      e.form.constant = static_cast<long>(t.value);
      return e;
    case Term::Kind::Add:
    case Term::Kind::Sub: {
      Expanded a = expand(t.args[0]);
      Expanded b = expand(t.args[1]);
      const long sign = t.kind == Term::Kind::Add ? 1 : -1;
      e.form = a.form;
      e.form.add(b.form, sign);
      e.guards = std::move(a.guards);
      e.guards.insert(e.guards.end(), b.guards.begin(), b.guards.end());
      if (t.kind == Term::Kind::Sub) e.guards.push_back(e.form);
      return e;
    }
    case Term::Kind::Scale: {
      if (t.value > static_cast<std::uint64_t>(kMaxCoefficient)) throw CompileError("factor out of range");
      Expanded a = expand(t.args[0]);
      e.form.add(a.form, static_cast<long>(t.value));
      e.guards = std::move(a.guards);
      return e;
    }
  }
  return e;
}

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.var);
  for (const auto& a : t.args) term_vars(a, out);
}

std::size_t index_of(const std::vector<std::string>& vars, const std::string& v) {
  return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
}

SyncDFA linear_over(const Linear& l, const std::vector<std::string>& vars, Rel rel) {
  std::vector<long> coeffs(vars.size(), 0);
  for (const auto& [v, c] : l.coef) coeffs[index_of(vars, v)] = c;
  return automata::linear_relation(coeffs, l.constant, rel);
}

Rel flip(Rel r) {
  switch (r) {
    case Rel::Lt: return Rel::Gt;
    case Rel::Le: return Rel::Ge;
    case Rel::Gt: return Rel::Lt;
    case Rel::Ge: return Rel::Le;
    default: return r;
  }
}

bool compare_values(long a, Rel r, long b) {
  switch (r) {
    case Rel::Eq: return a == b;
    case Rel::Ne: return a != b;
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
    case Rel::Gt: return a > b;
    case Rel::Ge: return a >= b;
  }
  return false;
}

class Compiler {
 public:
  Compiler(const PredicateEnv& env, const SequenceEnv& seqs) : env_(env), seqs_(seqs) {}

  Compiled run(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::True: return {automata::constant(true), {}};
      case Formula::Kind::False: return {automata::constant(false), {}};
      case Formula::Kind::Compare: return comparison(f);
      case Formula::Kind::SeqCompare: return sequence_atom(f);
      case Formula::Kind::Call: return call(f);
      case Formula::Kind::Not: {
        Compiled c = run(f.kids[0]);
        return {automata::complement(c.dfa), c.vars};
      }
      case Formula::Kind::And: return combine(f, BoolOp::And);
      case Formula::Kind::Or: return combine(f, BoolOp::Or);
      case Formula::Kind::Implies: return combine(f, BoolOp::Implies);
      case Formula::Kind::Iff: return combine(f, BoolOp::Iff);
      case Formula::Kind::Exists: {
        std::vector<std::string> vars;
        const Formula& body = peel(f, vars);
        return exists(run(body), vars);
      }
      case Formula::Kind::Forall: {
        std::vector<std::string> vars;
        Compiled body = run(peel(f, vars));
        body.dfa = automata::complement(body.dfa);
        Compiled ex = exists(std::move(body), vars);
        return {automata::complement(ex.dfa), ex.vars};
      }
    }
    throw CompileError("unknown formula node");
  }

 private:
  // Ex Ey phi is projected as one block so that project() picks the order.
  static const Formula& peel(const Formula& f, std::vector<std::string>& vars) {
    const Formula* cur = &f;
    while (cur->kind == f.kind) {
      vars.insert(vars.end(), cur->vars.begin(), cur->vars.end());
      cur = &cur->kids[0];
    }
    return *cur;
  }

  static Compiled widen(const Compiled& c, const std::vector<std::string>& vars) {
    if (c.vars == vars) return c;
    std::vector<int> target;
    for (const auto& v : c.vars) target.push_back(static_cast<int>(index_of(vars, v)));
    return {automata::remap(c.dfa, target, static_cast<int>(vars.size())), vars};
  }

  static std::vector<std::string> merge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  static void check_arity(std::size_t n) {
    if (n > static_cast<std::size_t>(automata::kMaxArity))
      throw CompileError("formula needs " + std::to_string(n) + " tracks (limit " + std::to_string(automata::kMaxArity) + ")");
  }

  Compiled combine(const Formula& f, BoolOp op) {
    Compiled a = run(f.kids[0]);
    Compiled b = run(f.kids[1]);
    auto vars = merge(a.vars, b.vars);
    check_arity(vars.size());
    return {automata::product(widen(a, vars).dfa, widen(b, vars).dfa, op), vars};
  }

  static Compiled exists(Compiled body, const std::vector<std::string>& quantified) {
    std::vector<int> tracks;
    std::vector<std::string> rest;
    for (std::size_t t = 0; t < body.vars.size(); ++t) {
      if (std::find(quantified.begin(), quantified.end(), body.vars[t]) != quantified.end())
        tracks.push_back(static_cast<int>(t));
      else
        rest.push_back(body.vars[t]);
    }
    if (tracks.empty()) return body;
    return {automata::project(body.dfa, tracks), rest};
  }

  std::string fresh() { return "#" + std::to_string(++fresh_); }

  // Constrains vars[slot] = term, adding the term's guards; all over `vars`.
  static void constrain(SyncDFA& acc, const std::vector<std::string>& vars, const std::string& slot, const Term& t) {
    Expanded e = expand(t);
    Linear eq;
    eq.coef[slot] = 1;
    eq.add(e.form, -1);
    acc = automata::product(acc, linear_over(eq, vars, Rel::Eq), BoolOp::And);
    for (const auto& g : e.guards) acc = automata::product(acc, linear_over(g, vars, Rel::Ge), BoolOp::And);
  }

  Compiled comparison(const Formula& f) {
    Expanded lhs = expand(f.terms[0]);
    Expanded rhs = expand(f.terms[1]);
    std::set<std::string> names;
    term_vars(f.terms[0], names);
    term_vars(f.terms[1], names);
    std::vector<std::string> vars(names.begin(), names.end());
    check_arity(vars.size());
    Linear diff = lhs.form;
    diff.add(rhs.form, -1);
    SyncDFA acc = linear_over(diff, vars, f.rel);
    for (const auto* side : {&lhs, &rhs})
      for (const auto& g : side->guards) acc = automata::product(acc, linear_over(g, vars, Rel::Ge), BoolOp::And);
    return {acc, vars};
  }

  // Names every argument: plain variables keep their name, compound terms get
  // a fresh slot variable that is constrained and finally projected away.
  struct Slots {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, const Term*>> fresh;
    std::set<std::string> all;
  };

  Slots name_arguments(const std::vector<const Term*>& args) {
    Slots s;
    for (const Term* t : args) {
      if (t->kind == Term::Kind::Var) {
        s.names.push_back(t->var);
        s.all.insert(t->var);
      } else {
        std::string v = fresh();
        s.names.push_back(v);
        s.fresh.emplace_back(v, t);
        s.all.insert(v);
        term_vars(*t, s.all);
      }
    }
    return s;
  }

  Compiled finish(const SyncDFA& core, const Slots& s) {
    std::vector<std::string> vars(s.all.begin(), s.all.end());
    check_arity(vars.size());
    std::vector<int> target;
    for (const auto& n : s.names) target.push_back(static_cast<int>(index_of(vars, n)));
    SyncDFA acc = automata::remap(core, target, static_cast<int>(vars.size()));
    for (const auto& [slot, term] : s.fresh) constrain(acc, vars, slot, *term);
    std::vector<std::string> slots;
    for (const auto& p : s.fresh) slots.push_back(p.first);
    return exists({acc, vars}, slots);
  }

  Compiled call(const Formula& f) {
    const Predicate* p = env_.find(f.name);
    if (!p) throw CompileError("unbound predicate '$" + f.name + "'");
    if (static_cast<int>(f.terms.size()) != p->dfa.arity())
      throw CompileError("predicate '$" + f.name + "' takes " + std::to_string(p->dfa.arity()) + " arguments, got " +
                         std::to_string(f.terms.size()));
    std::vector<const Term*> args;
    for (const auto& t : f.terms) args.push_back(&t);
    return finish(p->dfa, name_arguments(args));
  }

  const automata::Dfao& sequence(const std::string& name) const {
    auto it = seqs_.find(name);
    if (it == seqs_.end()) throw CompileError("unknown sequence '" + name + "'");
    return it->second;
  }

  Compiled sequence_atom(const Formula& f) {
    const SeqSide& l = f.sides[0];
    const SeqSide& r = f.sides[1];
    const bool ls = !l.sequence.empty(), rs = !r.sequence.empty();
    if (!ls && !rs) return {automata::constant(compare_values(l.literal, f.rel, r.literal)), {}};
    if (ls && rs) {
      SyncDFA core = automata::sequence_relation(sequence(l.sequence), sequence(r.sequence), f.rel);
      return finish(core, name_arguments({&l.index, &r.index}));
    }
    const SeqSide& s = ls ? l : r;
    const long lit = ls ? r.literal : l.literal;
    const Rel rel = ls ? f.rel : flip(f.rel);
    return finish(automata::sequence_constant(sequence(s.sequence), rel, lit), name_arguments({&s.index}));
  }

  const PredicateEnv& env_;
  const SequenceEnv& seqs_;
  int fresh_ = 0;
};

}  // namespace

Compiled compile(const Formula& f, const PredicateEnv& env, const SequenceEnv& seqs) {
  return Compiler(env, seqs).run(f);
}

}  // namespace fibwalk::logic
