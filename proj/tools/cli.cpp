#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fibwalk/automata.hpp"
#include "fibwalk/fibword.hpp"
#include "fibwalk/identities.hpp"
#include "fibwalk/logic.hpp"
#include "fibwalk/numeration.hpp"
#include "fibwalk/repetitions.hpp"

namespace fibwalk::cli {

namespace {

using nlohmann::json;
using repetitions::Report;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixed(long double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << static_cast<double>(v);
  return os.str();
}

std::string tuple_str(const std::vector<std::uint64_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::string rep(std::uint64_t v) { return ZeckRep(v).display(); }

// Predicates available to enumerate / export-dfa: the shipped prefix script,
// optional extra scripts on top, b1set / b2set, or an inline "?msd_fib" formula.
class Workspace {
 public:
  explicit Workspace(const std::vector<std::string>& scripts) {
    if (scripts.empty()) return;
    custom_.emplace();
    custom_->run(repetitions::prefixes_script());
    for (const auto& path : scripts) custom_->run(read_file(path));
  }

  struct Resolved {
    std::string name;
    automata::SyncDFA dfa;
    std::vector<std::string> params;
  };

  Resolved resolve(const std::string& spec) const {
    const auto& pa = repetitions::prefix_automata();
    const logic::Session& s = custom_ ? *custom_ : pa.session();
    if (!spec.empty() && spec[0] == '?') {
      constexpr std::string_view tag = "?msd_fib";
      if (spec.compare(0, tag.size(), tag) != 0) throw UsageError("formulas must start with ?msd_fib");
      const auto f = logic::parse_formula(std::string_view(spec).substr(tag.size()), s.env().names());
      logic::Compiled c = logic::compile(f, s.env());
      return {"formula", std::move(c.dfa), std::move(c.vars)};
    }
    if (spec == "b1set" || spec == "b2set") return {spec, pa.lookup(spec), {"n"}};
    const logic::Predicate* p = s.env().find(spec);
    if (!p) throw UsageError("unknown predicate '" + spec + "'");
    std::vector<std::string> params = p->params;
    if (params.empty())
      for (int t = 0; t < p->dfa.arity(); ++t) params.push_back("#" + std::to_string(t + 1));
    return {spec, p->dfa, params};
  }

 private:
  std::optional<logic::Session> custom_;
};

// ---- text rendering of reports ---------------------------------------------

void print_report(std::ostream& out, const Report& r) {
  out << (r.passed ? "PASS " : "FAIL ") << r.claim << " [" << r.first << ", " << r.last << "]: " << r.checked
      << " checked\n";
  if (r.details.contains("counts")) {
    const auto& c = r.details["counts"];
    out << "  G=" << c["G"] << " B1=" << c["B1"] << " B2=" << c["B2"] << " B1_and_B2=" << c["B1_and_B2"] << '\n';
  }
  if (r.details.contains("alternatives")) {
    const auto& a = r.details["alternatives"];
    out << "  both=" << a["both"] << " period_only=" << a["period_only"] << " suffix_only=" << a["suffix_only"]
        << '\n';
  }
  if (r.details.contains("min_slack") && r.details["argmin"].get<std::uint64_t>() != 0) {
    const auto& rec = r.details["argmin_record"];
    out << "  min slack " << fixed(r.details["min_slack"].get<double>(), 9) << " at n=" << r.details["argmin"]
        << " (e = " << rec["exponent"].get<std::string>() << ")\n";
  }
  for (const auto& f : r.failures) out << "  failure: " << f << '\n';
}

json check_json(const identities::CheckResult& c) {
  return {{"claim", c.name}, {"verdict", c.passed ? "PASS" : "FAIL"}, {"checked", c.checked}, {"failures", c.failures}};
}

void print_check(std::ostream& out, const identities::CheckResult& c) {
  out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.checked << " checked\n";
  for (const auto& f : c.failures) out << "  failure: " << f << '\n';
}

struct IdentityRun {
  std::vector<identities::CheckResult> checks;
  std::vector<identities::Lemma4Item> lemma4;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }) &&
           std::all_of(lemma4.begin(), lemma4.end(), [](const auto& l) { return l.range.passed; });
  }
};

IdentityRun run_identities(long lower_bound_i) {
  using namespace identities;
  IdentityRun r;
  r.checks.push_back(check_eq1(-30, 30));
  r.checks.push_back(check_lemma3(200));
  r.lemma4 = check_lemma4(200);
  for (auto& c : check_monotonicity(60)) r.checks.push_back(std::move(c));
  for (auto& c : check_closed_forms(100)) r.checks.push_back(std::move(c));
  r.checks.push_back(check_crossovers(Family::B1, 6, 400));
  r.checks.push_back(check_crossovers(Family::B2, 1, 400));
  r.checks.push_back(check_exponent_lower_bounds(Family::B1, lower_bound_i));
  r.checks.push_back(check_exponent_lower_bounds(Family::B2, lower_bound_i));
  return r;
}

void print_identities(std::ostream& out, const IdentityRun& r) {
  for (const auto& c : r.checks) print_check(out, c);
  for (const auto& l : r.lemma4) {
    print_check(out, l.range);
    out << "  threshold k >= " << l.threshold;
    if (l.fails_below) out << ", fails at k = " << *l.fails_below;
    out << '\n';
  }
}

json identities_json(const IdentityRun& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  for (const auto& l : r.lemma4) {
    json j = check_json(l.range);
    j["threshold"] = l.threshold;
    j["fails_below"] = l.fails_below ? json(*l.fails_below) : json(nullptr);
    checks.push_back(j);
  }
  return {{"claim", "identities"}, {"verdict", r.passed() ? "PASS" : "FAIL"}, {"checks", checks}};
}

// ---- subcommands -------------------------------------------------------------

int cmd_session(std::ostream& out, const std::vector<std::string>& files, bool as_json) {
  logic::Session session;
  std::vector<logic::CommandResult> results;
  for (const auto& path : files) {
    const std::string text = read_file(path);
    auto r = session.run(text);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (as_json)
    out << logic::report_json(results).dump(2) << '\n';
  else
    out << logic::format_report(results);
  return kOk;
}

int cmd_enumerate(std::ostream& out, const Workspace& ws, const std::string& pred, std::uint64_t limit,
                  std::optional<std::size_t> count, bool as_json) {
  const auto r = ws.resolve(pred);
  std::vector<std::vector<std::uint64_t>> members;
  if (count)
    members = automata::first_accepted(r.dfa, *count);
  else if (r.dfa.arity() == 1)
    for (auto v : automata::enumerate(r.dfa, limit)) members.push_back({v});
  else
    members = automata::enumerate_tuples(r.dfa, limit);
  if (as_json) {
    json list = json::array();
    for (const auto& t : members) {
      json reps = json::array();
      for (auto v : t) reps.push_back(rep(v));
      list.push_back({{"values", t}, {"representations", reps}});
    }
    out << json{{"predicate", r.name}, {"params", r.params}, {"states", r.dfa.live_states()}, {"members", list}}
               .dump(2)
        << '\n';
    return kOk;
  }
  for (const auto& t : members) {
    if (t.size() == 1) {
      out << t[0] << ' ' << rep(t[0]) << '\n';
    } else {
      std::vector<std::string> reps;
      for (auto v : t) reps.push_back(rep(v));
      std::string rs;
      for (std::size_t i = 0; i < reps.size(); ++i) rs += (i ? "," : "") + reps[i];
      out << tuple_str(t) << " (" << rs << ")\n";
    }
  }
  return kOk;
}

int cmd_verify(std::ostream& out, const std::string& what, std::uint64_t max_n, long lower_bound_i, bool as_json) {
  const bool all = what == "all";
  std::vector<Report> reports;
  if (all || what == "partition") reports.push_back(repetitions::verify_partition(max_n));
  if (all || what == "lemma1") reports.push_back(repetitions::verify_lemma1(max_n));
  if (all || what == "lemma2") reports.push_back(repetitions::verify_lemma2(max_n));
  if (all || what == "theorem") reports.push_back(repetitions::verify_theorem(max_n));
  std::optional<IdentityRun> ids;
  if (all || what == "identities") ids = run_identities(lower_bound_i);

  bool ok = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed; });
  if (ids) ok = ok && ids->passed();
  if (as_json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.json());
    if (ids) arr.push_back(identities_json(*ids));
    out << json{{"verdict", ok ? "PASS" : "FAIL"}, {"reports", arr}}.dump(2) << '\n';
  } else {
    for (const auto& r : reports) print_report(out, r);
    if (ids) print_identities(out, *ids);
    out << (ok ? "PASS" : "FAIL") << " verify " << what << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_en(std::ostream& out, std::uint64_t n, bool as_json) {
  if (n == 0) throw UsageError("e(n) needs n >= 1");
  const ExponentRecord e = e_of_n(n);
  std::optional<repetitions::ClassifiedIndex> c;
  if (n >= 2) c = repetitions::classify(n, e, repetitions::prefix_automata());
  auto witnesses = [](const std::vector<repetitions::Witness>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back({{"i", w.i}, {"j", w.j}});
    return a;
  };
  if (as_json) {
    json j{{"n", n}, {"x", e.x}, {"y", e.y}, {"exponent", e.exponent().str()},
           {"decimal", fixed(e.exponent().approx(), 9)}, {"zeckendorf", rep(n)}};
    if (c) {
      j["class"] = class_name(c->cls);
      j["b1"] = witnesses(c->b1);
      j["b2"] = witnesses(c->b2);
      j["consistent"] = c->consistent();
    }
    out << j.dump(2) << '\n';
  } else {
    out << "n = " << n << " [" << rep(n) << "]\n";
    out << "e(n) = " << e.exponent().str() << " = " << fixed(e.exponent().approx(), 9) << " (suffix length " << e.x
        << ", period " << e.y << ")\n";
    if (c) {
      out << "class " << class_name(c->cls);
      for (const auto& w : c->b1) out << " B1(i=" << w.i << ",j=" << w.j << ")";
      for (const auto& w : c->b2) out << " B2(i=" << w.i << ",j=" << w.j << ")";
      out << (c->consistent() ? "" : " INCONSISTENT") << '\n';
    }
  }
  return c && !c->consistent() ? kVerificationFailed : kOk;
}

int cmd_mgamma(std::ostream& out, std::ostream& err, std::uint64_t p, std::uint64_t q, bool largest_below,
               bool strict, std::uint64_t limit) {
  if (largest_below) {
    const std::uint64_t n =
        strict ? repetitions::largest_index_at_most(p, q) : repetitions::largest_index_below(p, q);
    out << "largest n with e(n) " << (strict ? "<=" : "<") << ' ' << p << '/' << q << ": " << n << '\n';
    return kOk;
  }
  const repetitions::MGamma m = repetitions::m_gamma_automaton(p, q);
  if (m.warning) err << "warning: " << *m.warning << '\n';
  out << "M_{" << p << '/' << q << "}: " << m.dfa.live_states() << " states\n";
  for (auto v : automata::enumerate(m.dfa, limit)) out << v << '\n';
  return kOk;
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body, std::ostream& out) {
  if (path == "-") {
    body(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  body(f);
}

int cmd_export(std::ostream& out, const Workspace& ws, const std::string& pred, const std::string& dot,
               const std::string& text) {
  if (dot.empty() && text.empty()) throw UsageError("export-dfa needs --dot or --text");
  const auto r = ws.resolve(pred);
  if (!dot.empty()) write_to(dot, [&](std::ostream& os) { automata::write_dot(os, r.dfa, r.name); }, out);
  if (!text.empty()) write_to(text, [&](std::ostream& os) { automata::write_text(os, r.dfa); }, out);
  return kOk;
}

int cmd_crossover(std::ostream& out, long i, const std::string& family, const std::string& csv) {
  const auto fam = family == "b1" ? identities::Family::B1 : identities::Family::B2;
  const identities::CrossoverTable t = identities::crossover(i, fam);
  const bool b1 = fam == identities::Family::B1;
  if (!csv.empty()) write_to(csv, [&](std::ostream& os) { identities::write_crossover_csv(os, t); }, out);
  if (csv != "-") {
    out << "i = " << i << ", family " << (b1 ? "B1" : "B2") << ", j' = " << t.j_prime << '\n';
    for (const auto& r : t.rows)
      out << "  j = " << r.j << ": " << (b1 ? "f = " : "r = ") << r.increasing.str() << ", "
          << (b1 ? "g = " : "s = ") << r.decreasing.str() << '\n';
    out << (t.bracket_holds ? "PASS" : "FAIL") << " bracket at j': " << t.detail << '\n';
  }
  return t.bracket_holds ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fibonacci-word prefix exponents: automata sessions, sweeps and identity checks", "fibwalk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  bool as_json = false;
  std::vector<std::string> files, scripts;
  std::string pred, what = "all", dot, text, family = "b1", csv;
  std::uint64_t limit = 100, max_n = 5000, n = 0, p = 0, q = 0;
  std::optional<std::size_t> count;
  long i = 0, lower_bound_i = 30;
  bool largest_below = false, strict = false;

  auto* session = app.add_subcommand("session", "run reg/def/eval/test scripts in one session");
  session->add_option("files", files, "script files")->required()->check(CLI::ExistingFile);
  session->add_flag("--json", as_json, "JSON report");

  auto* enumerate = app.add_subcommand("enumerate", "list accepted values (or tuples) up to a bound");
  enumerate->add_option("pred", pred, "predicate name, b1set, b2set, or \"?msd_fib <formula>\"")->required();
  enumerate->add_option("--limit", limit, "largest value listed")->capture_default_str();
  enumerate->add_option("--count", count, "list the first COUNT accepted inputs instead");
  enumerate->add_option("--script", scripts, "extra script loaded on top of the shipped definitions")
      ->check(CLI::ExistingFile);
  enumerate->add_flag("--json", as_json, "JSON output");

  auto* verify = app.add_subcommand("verify", "run verification sweeps");
  verify->add_option("what", what, "partition|lemma1|lemma2|theorem|identities|all")
      ->check(CLI::IsMember({"partition", "lemma1", "lemma2", "theorem", "identities", "all"}))
      ->capture_default_str();
  verify->add_option("--max-n", max_n, "sweep upper bound")->capture_default_str();
  verify->add_option("--bound-i", lower_bound_i, "largest i for the pointwise e(n) lower bounds")
      ->check(CLI::Range(5L, 40L))
      ->capture_default_str();
  verify->add_flag("--json", as_json, "JSON output");

  auto* en = app.add_subcommand("en", "print e(n) with its witness suffix and class");
  en->add_option("n", n, "prefix length")->required();
  en->add_flag("--json", as_json, "JSON output");

  auto* mgamma = app.add_subcommand("mgamma", "automaton for {n : e(n) >= p/q}");
  mgamma->add_option("p", p)->required();
  mgamma->add_option("q", q)->required();
  mgamma->add_flag("--largest-below", largest_below, "print the largest n with e(n) < p/q");
  mgamma->add_flag("--strict", strict, "with --largest-below: use e(n) <= p/q instead");
  mgamma->add_option("--limit", limit, "largest member listed")->capture_default_str();

  auto* exp = app.add_subcommand("export-dfa", "write an automaton as Graphviz or text");
  exp->add_option("pred", pred, "predicate name, b1set, b2set, or \"?msd_fib <formula>\"")->required();
  exp->add_option("--dot", dot, "Graphviz output path ('-' for stdout)");
  exp->add_option("--text", text, "text output path ('-' for stdout)");
  exp->add_option("--script", scripts, "extra script loaded on top of the shipped definitions")
      ->check(CLI::ExistingFile);

  auto* cross = app.add_subcommand("crossover", "crossover table of one index");
  cross->add_option("i", i, "index i")->required();
  cross->add_option("--family", family, "b1|b2")->check(CLI::IsMember({"b1", "b2"}))->capture_default_str();
  cross->add_option("--csv", csv, "CSV output path ('-' for stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*session) return cmd_session(out, files, as_json);
    if (*enumerate) return cmd_enumerate(out, Workspace(scripts), pred, limit, count, as_json);
    if (*verify) return cmd_verify(out, what, max_n, lower_bound_i, as_json);
    if (*en) return cmd_en(out, n, as_json);
    if (*mgamma) return cmd_mgamma(out, err, p, q, largest_below, strict, limit);
    if (*exp) return cmd_export(out, Workspace(scripts), pred, dot, text);
    if (*cross) return cmd_crossover(out, i, family, csv);
  } catch (const UsageError& e) {
    err << "fibwalk: " << e.what() << '\n';
    return kUsage;
  } catch (const logic::ParseError& e) {
    err << "fibwalk: parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const logic::SessionError& e) {
    err << "fibwalk: " << e.what() << '\n';
    return kUsage;
  } catch (const logic::CompileError& e) {
    err << "fibwalk: compile error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "fibwalk: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fibwalk::cli
