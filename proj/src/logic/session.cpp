#include <sstream>

#include "fibwalk/logic.hpp"
#include "fibwalk/numeration.hpp"

namespace fibwalk::logic {

SessionError::SessionError(std::size_t command_index, const std::string& msg)
    : std::runtime_error("command " + std::to_string(command_index) + ": " + msg), index_(command_index) {}

Session::Session(SequenceEnv seqs) : seqs_(std::move(seqs)) {}

const Compiled* Session::eval_result(const std::string& name) const {
  auto it = evals_.find(name);
  return it == evals_.end() ? nullptr : &it->second;
}

CommandResult Session::execute(const Command& cmd) {
  CommandResult r;
  r.index = ++executed_;
  r.kind = cmd.kind;
  r.name = cmd.name;
  switch (cmd.kind) {
    case Command::Kind::Reg: {
      Predicate p{cmd.name, cmd.kind, compile_reg(cmd), {}, cmd};
      r.arity = p.dfa.arity();
      r.states = p.dfa.live_states();
      env_.bind(std::move(p));
      break;
    }
    case Command::Kind::Def: {
      Compiled c = compile(cmd.formula, env_, seqs_);
      r.arity = c.dfa.arity();
      r.states = c.dfa.live_states();
      r.params = c.vars;
      env_.bind(Predicate{cmd.name, cmd.kind, std::move(c.dfa), std::move(c.vars), cmd});
      break;
    }
    case Command::Kind::Eval: {
      Compiled c = compile(cmd.formula, env_, seqs_);
      r.arity = c.dfa.arity();
      r.states = c.dfa.live_states();
      r.params = c.vars;
      if (c.vars.empty()) r.verdict = automata::decide(c.dfa);
      evals_.insert_or_assign(cmd.name, std::move(c));
      break;
    }
    case Command::Kind::Test: {
      const Predicate& p = env_.at(cmd.name);
      r.arity = p.dfa.arity();
      r.states = p.dfa.live_states();
      r.params = p.params;
      r.listing = automata::first_accepted(p.dfa, cmd.count);
      break;
    }
  }
  return r;
}

std::vector<CommandResult> Session::run(std::string_view script) {
  std::vector<Command> cmds;
  try {
    cmds = parse(script, env_.names());
  } catch (const ParseError& e) {
    throw SessionError(executed_ + 1, e.what());
  }
  std::vector<CommandResult> out;
  for (const auto& c : cmds) {
    try {
      out.push_back(execute(c));
    } catch (const SessionError&) {
      throw;
    } catch (const std::exception& e) {
      throw SessionError(executed_, c.name + ": " + e.what());
    }
  }
  return out;
}

namespace {

const char* kind_name(Command::Kind k) {
  switch (k) {
    case Command::Kind::Reg: return "reg";
    case Command::Kind::Def: return "def";
    case Command::Kind::Eval: return "eval";
    case Command::Kind::Test: return "test";
  }
  return "?";
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s;
}

std::string rep(std::uint64_t v) { return ZeckRep(v).display(); }

}  // namespace

std::string format_report(const std::vector<CommandResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << kind_name(r.kind) << ' ' << r.name << ": ";
    if (r.verdict) {
      os << (*r.verdict ? "TRUE" : "FALSE") << '\n';
      continue;
    }
    if (r.kind == Command::Kind::Test) {
      os << r.listing.size() << (r.listing.size() == 1 ? " input\n" : " inputs\n");
      for (const auto& t : r.listing) {
        os << "  ";
        if (t.size() == 1) {
          os << rep(t[0]) << " = " << t[0];
        } else {
          std::vector<std::string> reps, vals;
          for (auto v : t) {
            reps.push_back(rep(v));
            vals.push_back(std::to_string(v));
          }
          os << '(' << join(reps) << ") = (" << join(vals) << ')';
        }
        os << '\n';
      }
      continue;
    }
    os << "arity " << r.arity;
    if (!r.params.empty()) os << " (" << join(r.params) << ')';
    os << ", " << r.states << " states\n";
  }
  return os.str();
}

nlohmann::json report_json(const std::vector<CommandResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j;
    j["index"] = r.index;
    j["command"] = kind_name(r.kind);
    j["name"] = r.name;
    j["arity"] = r.arity;
    j["states"] = r.states;
    j["params"] = r.params;
    j["verdict"] = r.verdict ? nlohmann::json(*r.verdict) : nlohmann::json(nullptr);
    nlohmann::json listing = nlohmann::json::array();
    for (const auto& t : r.listing) {
      nlohmann::json reps = nlohmann::json::array();
      for (auto v : t) reps.push_back(rep(v));
      listing.push_back({{"values", t}, {"representations", reps}});
    }
    j["enumeration"] = listing;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace fibwalk::logic
