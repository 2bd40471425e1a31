#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "fibwalk/logic.hpp"

namespace fibwalk::logic {

using automata::Rel;

ParseError::ParseError(const std::string& msg, SourcePos pos)
    : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg),
      pos_(pos) {}

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.var = std::move(name);
  return t;
}

Term Term::constant(std::uint64_t v) {
  Term t;
  t.kind = Kind::Const;
  t.value = v;
  return t;
}

Term Term::binary(Kind k, Term a, Term b) {
  Term t;
  t.kind = k;
  t.args.push_back(std::move(a));
  t.args.push_back(std::move(b));
  return t;
}

Term Term::scale(std::uint64_t c, Term inner) {
  Term t;
  t.kind = Kind::Scale;
  t.value = c;
  t.args.push_back(std::move(inner));
  return t;
}

namespace {

// Maps byte offsets of the whole source to line/column.
class Locator {
 public:
  explicit Locator(std::string_view src) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n') line_starts_.push_back(i + 1);
  }
  SourcePos at(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return {line, offset - line_starts_[line - 1] + 1};
  }

 private:
  std::vector<std::size_t> line_starts_;
};

enum class Tok {
  End, Ident, SeqName, Quant, Number, Pred, LParen, RParen, LBrack, RBrack, Comma,
  And, Or, Not, Implies, Iff, Eq, Ne, Lt, Le, Gt, Ge, Plus, Minus, Star, At
};

struct Token {
  Tok kind;
  std::string text;
  std::uint64_t value = 0;
  std::size_t offset = 0;
};

std::vector<Token> lex_formula(std::string_view src, std::size_t begin, std::size_t end, const Locator& loc) {
  std::vector<Token> out;
  std::size_t i = begin;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, loc.at(i)); };
  auto next_non_space = [&](std::size_t j) {
    while (j < end && std::isspace(static_cast<unsigned char>(src[j]))) ++j;
    return j;
  };
  while (true) {
    i = next_non_space(i);
    if (i >= end) break;
    const char c = src[i];
    const std::size_t start = i;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(src.substr(start, len)), 0, start});
      i += len;
    };
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s && i + s.size() <= end; };
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < end && (std::islower(static_cast<unsigned char>(src[j])) || std::isdigit(static_cast<unsigned char>(src[j])) ||
                         src[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      if ((c == 'A' || c == 'E') && (next_non_space(i + 1) >= end || src[next_non_space(i + 1)] != '[')) {
        push(Tok::Quant, 1);
        continue;
      }
      std::size_t j = i;
      while (j < end && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      if (next_non_space(j) >= end || src[next_non_space(j)] != '[')
        fail("sequence name '" + std::string(src.substr(i, j - i)) + "' must be followed by '['");
      push(Tok::SeqName, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t v = 0;
      while (j < end && std::isdigit(static_cast<unsigned char>(src[j]))) {
        const std::uint64_t d = static_cast<std::uint64_t>(src[j] - '0');
        if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
        v = v * 10 + d;
        ++j;
      }
      push(Tok::Number, j - i);
      out.back().value = v;
    } else if (c == '$') {
      std::size_t j = i + 1;
      while (j < end && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      if (j == i + 1) fail("expected predicate name after '$'");
      push(Tok::Pred, j - i);
      out.back().text.erase(0, 1);
    } else if (starts("<=>")) {
      push(Tok::Iff, 3);
    } else if (starts("=>")) {
      push(Tok::Implies, 2);
    } else if (starts("<=")) {
      push(Tok::Le, 2);
    } else if (starts(">=")) {
      push(Tok::Ge, 2);
    } else if (starts("!=") || starts("~=")) {
      push(Tok::Ne, 2);
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBrack; break;
        case ']': k = Tok::RBrack; break;
        case ',': k = Tok::Comma; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '~': k = Tok::Not; break;
        case '=': k = Tok::Eq; break;
        case '<': k = Tok::Lt; break;
        case '>': k = Tok::Gt; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '@': k = Tok::At; break;
        default: fail(std::string("unexpected character '") + c + "'");
      }
      push(k, 1);
    }
  }
  out.push_back({Tok::End, "", 0, end});
  return out;
}

std::optional<Rel> relation_of(Tok t) {
  switch (t) {
    case Tok::Eq: return Rel::Eq;
    case Tok::Ne: return Rel::Ne;
    case Tok::Lt: return Rel::Lt;
    case Tok::Le: return Rel::Le;
    case Tok::Gt: return Rel::Gt;
    case Tok::Ge: return Rel::Ge;
    default: return std::nullopt;
  }
}

class FormulaParser {
 public:
  FormulaParser(std::vector<Token> toks, const Locator& loc, const std::set<std::string>& known)
      : toks_(std::move(toks)), loc_(loc), known_(known) {}

  Formula parse_all() {
    Formula f = formula();
    if (cur().kind != Tok::End) fail("unexpected '" + cur().text + "'");
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  SourcePos here() const { return loc_.at(cur().offset); }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, here()); }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + (cur().kind == Tok::End ? " at end of formula" : ", found '" + cur().text + "'"));
  }

  static Formula node(Formula::Kind k, SourcePos p) {
    Formula f;
    f.kind = k;
    f.pos = p;
    return f;
  }
  static Formula binary(Formula::Kind k, Formula a, Formula b, SourcePos p) {
    Formula f = node(k, p);
    f.kids.push_back(std::move(a));
    f.kids.push_back(std::move(b));
    return f;
  }

  Formula formula() {
    if (cur().kind == Tok::Quant) return quantified();
    return iff();
  }

  Formula quantified() {
    SourcePos p = here();
    const bool forall = cur().text == "A";
    ++pos_;
    Formula f = node(forall ? Formula::Kind::Forall : Formula::Kind::Exists, p);
    do {
      if (cur().kind != Tok::Ident) fail("expected variable after quantifier");
      f.vars.push_back(cur().text);
      ++pos_;
    } while (accept(Tok::Comma));
    f.kids.push_back(formula());
    return f;
  }

  Formula iff() {
    Formula left = implies();
    while (cur().kind == Tok::Iff) {
      SourcePos p = here();
      ++pos_;
      left = binary(Formula::Kind::Iff, std::move(left), implies(), p);
    }
    return left;
  }

  Formula implies() {
    Formula left = disjunction();
    if (cur().kind == Tok::Implies) {
      SourcePos p = here();
      ++pos_;
      return binary(Formula::Kind::Implies, std::move(left), implies(), p);
    }
    return left;
  }

  Formula disjunction() {
    Formula left = conjunction();
    while (cur().kind == Tok::Or) {
      SourcePos p = here();
      ++pos_;
      left = binary(Formula::Kind::Or, std::move(left), conjunction(), p);
    }
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    while (cur().kind == Tok::And) {
      SourcePos p = here();
      ++pos_;
      left = binary(Formula::Kind::And, std::move(left), unary(), p);
    }
    return left;
  }

  Formula unary() {
    SourcePos p = here();
    if (accept(Tok::Not)) {
      Formula f = node(Formula::Kind::Not, p);
      f.kids.push_back(unary());
      return f;
    }
    if (cur().kind == Tok::Quant) return quantified();
    if (cur().kind == Tok::Pred) return call();
    if (cur().kind == Tok::LParen) {
      // a parenthesized term starting a comparison, or a parenthesized formula
      const std::size_t save = pos_;
      try {
        return comparison();
      } catch (const ParseError&) {
        pos_ = save;
      }
      ++pos_;
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return comparison();
  }

  Formula call() {
    SourcePos p = here();
    Formula f = node(Formula::Kind::Call, p);
    f.name = cur().text;
    if (!known_.count(f.name)) fail("unbound predicate '$" + f.name + "'");
    ++pos_;
    expect(Tok::LParen, "'(' after predicate name");
    if (!accept(Tok::RParen)) {
      do f.terms.push_back(term());
      while (accept(Tok::Comma));
      expect(Tok::RParen, "')' after arguments");
    }
    return f;
  }

  struct Side {
    bool is_seq = false;
    SeqSide seq;
    Term term;
    bool literal_ok = false;  // a bare natural or @natural
  };

  Side side() {
    Side s;
    if (cur().kind == Tok::SeqName) {
      s.is_seq = true;
      s.seq.sequence = cur().text;
      ++pos_;
      expect(Tok::LBrack, "'['");
      s.seq.index = term();
      expect(Tok::RBrack, "']'");
      return s;
    }
    if (accept(Tok::At)) {
      if (cur().kind != Tok::Number) fail("expected natural after '@'");
      s.is_seq = true;
      s.seq.literal = static_cast<long>(cur().value);
      ++pos_;
      return s;
    }
    s.term = term();
    s.literal_ok = s.term.kind == Term::Kind::Const;
    return s;
  }

  Formula comparison() {
    SourcePos p = here();
    Side lhs = side();
    auto rel = relation_of(cur().kind);
    if (!rel) fail(cur().kind == Tok::End ? "expected comparison at end of formula" : "expected comparison, found '" + cur().text + "'");
    ++pos_;
    Side rhs = side();
    if (lhs.is_seq || rhs.is_seq) {
      auto to_seq = [&](Side& s) {
        if (s.is_seq) return s.seq;
        if (!s.literal_ok) fail("a sequence can only be compared with a sequence term or a natural");
        SeqSide lit;
        lit.literal = static_cast<long>(s.term.value);
        return lit;
      };
      Formula f = node(Formula::Kind::SeqCompare, p);
      f.rel = *rel;
      f.sides.push_back(to_seq(lhs));
      f.sides.push_back(to_seq(rhs));
      return f;
    }
    Formula f = node(Formula::Kind::Compare, p);
    f.rel = *rel;
    f.terms.push_back(std::move(lhs.term));
    f.terms.push_back(std::move(rhs.term));
    return f;
  }

  Term term() {
    Term left = product();
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      const bool plus = cur().kind == Tok::Plus;
      ++pos_;
      left = Term::binary(plus ? Term::Kind::Add : Term::Kind::Sub, std::move(left), product());
    }
    return left;
  }

  Term product() {
    if (cur().kind == Tok::Number && toks_[pos_ + 1].kind == Tok::Star) {
      std::uint64_t c = cur().value;
      pos_ += 2;
      return Term::scale(c, factor());
    }
    Term f = factor();
    if (accept(Tok::Star)) {
      if (cur().kind != Tok::Number) fail("multiplication needs a natural constant factor");
      std::uint64_t c = cur().value;
      ++pos_;
      return Term::scale(c, std::move(f));
    }
    return f;
  }

  Term factor() {
    if (cur().kind == Tok::Ident) {
      Term t = Term::variable(cur().text);
      ++pos_;
      return t;
    }
    if (cur().kind == Tok::Number) {
      Term t = Term::constant(cur().value);
      ++pos_;
      return t;
    }
    if (accept(Tok::LParen)) {
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail(cur().kind == Tok::End ? "expected term at end of formula" : "expected term, found '" + cur().text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Locator& loc_;
  const std::set<std::string>& known_;
};

Formula parse_span(std::string_view src, std::size_t begin, std::size_t end, const Locator& loc,
                   const std::set<std::string>& known) {
  return FormulaParser(lex_formula(src, begin, end, loc), loc, known).parse_all();
}

class ScriptParser {
 public:
  ScriptParser(std::string_view src, const std::vector<std::string>& known)
      : src_(src), loc_(src), known_(known.begin(), known.end()) {}

  std::vector<Command> parse() {
    std::vector<Command> out;
    while (true) {
      skip_blank();
      if (i_ >= src_.size()) break;
      out.push_back(command());
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, loc_.at(at)); }

  void skip_blank() {
    while (i_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[i_]))) {
        ++i_;
      } else if (src_[i_] == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  std::string word() {
    skip_blank();
    std::size_t j = i_;
    while (j < src_.size() && !std::isspace(static_cast<unsigned char>(src_[j])) && src_[j] != '"' && src_[j] != ':') ++j;
    std::string w(src_.substr(i_, j - i_));
    i_ = j;
    return w;
  }

  std::string identifier(const char* what) {
    skip_blank();
    const std::size_t at = i_;
    std::string w = word();
    if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_') ||
        !std::all_of(w.begin(), w.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
      fail(std::string("expected ") + what, at);
    return w;
  }

  // returns [begin, end) of the quoted text
  std::pair<std::size_t, std::size_t> quoted() {
    skip_blank();
    if (i_ >= src_.size() || src_[i_] != '"') fail("expected '\"'", i_);
    const std::size_t begin = ++i_;
    while (i_ < src_.size() && src_[i_] != '"') ++i_;
    if (i_ >= src_.size()) fail("unterminated string", begin - 1);
    return {begin, i_++};
  }

  void terminator() {
    skip_blank();
    if (i_ >= src_.size() || src_[i_] != ':') fail("expected ':' at end of command", i_);
    ++i_;
  }

  Command command() {
    const std::size_t start = i_;
    Command cmd;
    cmd.pos = loc_.at(start);
    const std::string kw = word();
    if (kw == "reg") {
      cmd.kind = Command::Kind::Reg;
      cmd.name = identifier("predicate name");
      while (true) {
        skip_blank();
        if (i_ < src_.size() && src_[i_] == '"') break;
        const std::size_t at = i_;
        std::string tag = word();
        if (tag.empty()) fail("expected alphabet tag or regex", at);
        if (tag != "msd_fib" && tag != "{0,1}") fail("unknown numeration tag '" + tag + "' (only msd_fib and {0,1})", at);
        cmd.tracks.push_back(tag);
      }
      if (cmd.tracks.empty()) fail("reg needs at least one track tag", i_);
      auto [b, e] = quoted();
      cmd.text = std::string(src_.substr(b, e - b));
      terminator();
      bind(cmd.name, start);
    } else if (kw == "def" || kw == "eval") {
      cmd.kind = kw == "def" ? Command::Kind::Def : Command::Kind::Eval;
      cmd.name = identifier("predicate name");
      auto [b, e] = quoted();
      std::size_t body = b;
      while (body < e && std::isspace(static_cast<unsigned char>(src_[body]))) ++body;
      if (body >= e || src_[body] != '?') fail("missing numeration tag (expected ?msd_fib)", body);
      std::size_t tag_end = body;
      while (tag_end < e && !std::isspace(static_cast<unsigned char>(src_[tag_end]))) ++tag_end;
      const std::string_view tag = src_.substr(body, tag_end - body);
      if (tag != "?msd_fib") fail("unknown numeration tag '" + std::string(tag) + "' (only ?msd_fib)", body);
      cmd.text = std::string(src_.substr(tag_end, e - tag_end));
      cmd.formula = parse_span(src_, tag_end, e, loc_, known_);
      terminator();
      if (cmd.kind == Command::Kind::Def) bind(cmd.name, start);
    } else if (kw == "test") {
      cmd.kind = Command::Kind::Test;
      const std::size_t at = i_;
      cmd.name = identifier("predicate name");
      if (!known_.count(cmd.name)) fail("unbound predicate '" + cmd.name + "'", at);
      skip_blank();
      const std::size_t num_at = i_;
      std::string n = word();
      if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          n.size() > 9)
        fail("expected a count after test name", num_at);
      cmd.count = std::stoul(n);
      terminator();
    } else {
      fail(kw.empty() ? "expected command" : "unknown command '" + kw + "'", start);
    }
    return cmd;
  }

  void bind(const std::string& name, std::size_t at) {
    if (!known_.insert(name).second) fail("predicate '" + name + "' is already defined", at);
  }

  std::string_view src_;
  Locator loc_;
  std::set<std::string> known_;
  std::size_t i_ = 0;
};

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.var);
  for (const auto& a : t.args) collect_term_vars(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Compare:
    case Formula::Kind::Call:
      for (const auto& t : f.terms) collect_term_vars(t, out);
      return;
    case Formula::Kind::SeqCompare:
      for (const auto& s : f.sides)
        if (!s.sequence.empty()) collect_term_vars(s.index, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::set<std::string> inner;
      collect_free(f.kids[0], inner);
      for (const auto& v : f.vars) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      for (const auto& k : f.kids) collect_free(k, out);
  }
}

}  // namespace

std::vector<Command> parse(std::string_view source, const std::vector<std::string>& known) {
  return ScriptParser(source, known).parse();
}

Formula parse_formula(std::string_view text, const std::vector<std::string>& known) {
  Locator loc(text);
  std::set<std::string> names(known.begin(), known.end());
  return parse_span(text, 0, text.size(), loc, names);
}

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> vars;
  collect_free(f, vars);
  return {vars.begin(), vars.end()};
}

}  // namespace fibwalk::logic
