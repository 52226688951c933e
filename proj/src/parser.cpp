#include "howebench/parser.hpp"

#include <optional>

namespace howebench {

namespace {

struct Token {
  enum Kind {
    Ident,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Langle,
    Rangle,
    Comma,
    Semi,
    Colon,
    Dot,
    Eq,
    Backslash,
    Dash,
    Arrow,
    FatArrow,
    Newline,
    End
  } kind;
  std::string text;
  int line;
  int col;
  bool spaceBefore;
};

bool identStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool identCont(char c) {
  return identStart(c) || (c >= '0' && c <= '9') || c == '\'';
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  bool space = false;
  auto push = [&](Token::Kind k, std::string t, int c) {
    out.push_back({k, std::move(t), line, c, space});
    space = false;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      space = true;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      push(Token::Newline, "\n", col);
      ++i;
      ++line;
      col = 1;
      space = true;
      continue;
    }
    int startCol = col;
    if (identStart(c)) {
      size_t j = i;
      while (j < text.size() && identCont(text[j])) ++j;
      push(Token::Ident, text.substr(i, j - i), startCol);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', '>')) {
      push(Token::Arrow, "->", startCol);
      i += 2;
      col += 2;
      continue;
    }
    if (two('=', '>')) {
      push(Token::FatArrow, "=>", startCol);
      i += 2;
      col += 2;
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '(': k = Token::LParen; break;
      case ')': k = Token::RParen; break;
      case '[': k = Token::LBrack; break;
      case ']': k = Token::RBrack; break;
      case '<': k = Token::Langle; break;
      case '>': k = Token::Rangle; break;
      case ',': k = Token::Comma; break;
      case ';': k = Token::Semi; break;
      case ':': k = Token::Colon; break;
      case '.': k = Token::Dot; break;
      case '=': k = Token::Eq; break;
      case '\\': k = Token::Backslash; break;
      case '-': k = Token::Dash; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    push(k, std::string(1, c), startCol);
    ++i;
    ++col;
  }
  out.push_back({Token::End, "", line, col, space});
  return out;
}

using Scope = std::vector<std::pair<std::string, SortId>>;

Ctx scopeSorts(const Scope& scope) {
  Ctx ctx;
  ctx.reserve(scope.size());
  for (const auto& [name, sort] : scope) ctx.push_back(sort);
  return ctx;
}

struct Parser {
  Signature& sig;
  std::vector<Token> toks;
  size_t pos = 0;

  enum class Mode { Concrete, Rule, Clause };
  Mode mode = Mode::Concrete;
  std::vector<RuleMVar>* mvars = nullptr;  // Rule and Clause modes

  Parser(Signature& s, const std::string& text) : sig(s), toks(tokenize(text)) {}

  const Token& peek(size_t ahead = 0) const {
    size_t p = pos + ahead;
    return p < toks.size() ? toks[p] : toks.back();
  }
  const Token& next() {
    const Token& t = toks[pos];
    if (t.kind != Token::End) ++pos;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
  }
  const Token& expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what, peek());
    return next();
  }
  std::string expectIdent(const std::string& what) {
    return std::string(expect(Token::Ident, what).text);
  }
  void expectLineEnd() {
    if (peek().kind != Token::Newline && peek().kind != Token::End)
      fail("unexpected token at end of declaration", peek());
    if (peek().kind == Token::Newline) next();
  }
  void skipNewlines() {
    while (peek().kind == Token::Newline) next();
  }

  SortId sortRef() {
    const Token& t = peek();
    std::string name = expectIdent("a sort name");
    SortId s = sig.sortId(name);
    if (s < 0) fail("unknown sort '" + name + "'", t);
    return s;
  }

  // ---- term parsing -------------------------------------------------------

  int lookupScope(const Scope& scope, const std::string& name) const {
    for (size_t i = 0; i < scope.size(); ++i) {
      size_t slot = scope.size() - 1 - i;  // innermost first
      if (scope[slot].first == name) return static_cast<int>(i);
    }
    return -1;
  }

  Term mvarRef(const std::string& name, std::optional<SortId> expected, const Scope& scope,
               const Token& at) {
    if (mode == Mode::Concrete) fail("unknown identifier '" + name + "'", at);
    for (size_t m = 0; m < mvars->size(); ++m)
      if ((*mvars)[m].name == name) return Term::mvar(static_cast<int>(m));
    if (mode == Mode::Clause)
      fail("unknown name '" + name + "' in clause right-hand side", at);
    if (!expected)
      fail("cannot infer the sort of metavariable '" + name + "'", at);
    mvars->push_back({name, *expected, scopeSorts(scope)});
    return Term::mvar(static_cast<int>(mvars->size() - 1));
  }

  SortId leastSortOrFail(const Term& t, const Scope& scope, const Token& at) {
    SortResult r = least_sort(sig, scopeSorts(scope), t);
    if (!r.ok()) fail(r.error, at);
    return *r.sort;
  }

  bool startsTerm(const Token& t) const {
    switch (t.kind) {
      case Token::Ident:
      case Token::LParen:
      case Token::Langle:
      case Token::Backslash:
        return true;
      case Token::LBrack:
        return t.spaceBefore;  // '[]' atom; tight '[' is a substitution postfix
      default:
        return false;
    }
  }

  Term parseTerm(std::optional<SortId> expected, Scope& scope) {
    const Token& t = peek();
    if (t.kind == Token::Backslash) return parseLambda(expected, scope);
    if (t.kind == Token::Ident && t.text == "shift" && peek(1).kind == Token::Ident &&
        peek(2).kind == Token::Dot)
      return parseShiftSugar(expected, scope);

    Term first = parsePrimary(expected, scope);
    if (mode != Mode::Concrete) return first;

    // Juxtaposition (concrete terms only): fold left, picking the
    // constructor by the sorts of the two parts.
    while (startsTerm(peek())) {
      const Token& at = peek();
      Term right = parsePrimary(std::nullopt, scope);
      first = foldJuxt(first, right, scope, at);
    }
    return first;
  }

  Term parseLambda(std::optional<SortId> expected, Scope& scope) {
    const Token& at = next();  // backslash
    int lam = sig.conId("lam");
    if (lam < 0 || sig.cons[lam].args.size() != 1 || sig.cons[lam].args[0].binders.size() != 1)
      fail("'\\' needs a constructor lam with one argument and one binder", at);
    std::string name = expectIdent("a binder name");
    expect(Token::Dot, "'.'");
    scope.emplace_back(name, sig.cons[lam].args[0].binders[0]);
    Term body = parseTerm(sig.cons[lam].args[0].sort, scope);
    scope.pop_back();
    (void)expected;
    return Term::con(lam, {std::move(body)}, {1});
  }

  Term parseShiftSugar(std::optional<SortId> expected, Scope& scope) {
    const Token& at = next();  // 'shift'
    int sh = sig.conId("shift");
    if (sh < 0 || sig.cons[sh].args.size() != 1 || sig.cons[sh].args[0].binders.size() != 1)
      fail("'shift x. e' needs a constructor shift with one argument and one binder", at);
    std::string name = expectIdent("a binder name");
    expect(Token::Dot, "'.'");
    scope.emplace_back(name, sig.cons[sh].args[0].binders[0]);
    Term body = parseTerm(sig.cons[sh].args[0].sort, scope);
    scope.pop_back();
    (void)expected;
    return Term::con(sh, {std::move(body)}, {1});
  }

  Term parsePrimary(std::optional<SortId> expected, Scope& scope) {
    const Token& t = peek();
    Term result;
    switch (t.kind) {
      case Token::LParen: {
        next();
        result = parseTerm(expected, scope);
        expect(Token::RParen, "')'");
        break;
      }
      case Token::Langle: {
        next();
        int rs = sig.conId("reset");
        if (rs < 0 || sig.cons[rs].args.size() != 1 || !sig.cons[rs].args[0].binders.empty())
          fail("'<e>' needs a unary constructor reset", t);
        Term body = parseTerm(sig.cons[rs].args[0].sort, scope);
        expect(Token::Rangle, "'>'");
        result = Term::con(rs, {std::move(body)}, {0});
        break;
      }
      case Token::LBrack: {
        next();
        expect(Token::RBrack, "']'");
        int h = sig.conId("hole");
        if (h < 0 || !sig.cons[h].args.empty())
          fail("'[]' needs a nullary constructor hole", t);
        result = Term::con0(h);
        break;
      }
      case Token::Backslash:
        return parseLambda(expected, scope);
      case Token::Ident: {
        std::string name = next().text;
        int slot = lookupScope(scope, name);
        if (slot >= 0) {
          result = Term::var(slot);
          break;
        }
        if (peek().kind == Token::LParen) {
          result = parseCall(name, scope, t);
          break;
        }
        int c = sig.conId(name);
        if (c >= 0) {
          if (!sig.cons[c].args.empty())
            fail("constructor '" + name + "' expects arguments", t);
          result = Term::con0(c);
          break;
        }
        if (sig.opId(name) >= 0) fail("operation '" + name + "' expects arguments", t);
        // Optional sort ascription on a metavariable: 'm : sort'. Needed when
        // the position allows a supersort of the intended one.
        if (mode == Mode::Rule && peek().kind == Token::Colon) {
          next();
          SortId ascribed = sortRef();
          for (const RuleMVar& mv : *mvars)
            if (mv.name == name && mv.sort != ascribed)
              fail("metavariable '" + name + "' already has sort '" +
                       sig.sorts[mv.sort] + "'",
                   t);
          result = mvarRef(name, ascribed, scope, t);
          break;
        }
        result = mvarRef(name, expected, scope, t);
        break;
      }
      default:
        fail("expected a term", t);
    }
    // Substitution postfix: a '[' with no preceding whitespace.
    while (peek().kind == Token::LBrack && !peek().spaceBefore) {
      result = parseSubstPostfix(std::move(result), scope);
    }
    return result;
  }

  Term parseSubstPostfix(Term body, Scope& scope) {
    const Token& at = next();  // '['
    if (mode == Mode::Concrete)
      fail("explicit substitution is only available in rule and clause definitions", at);
    if (body.kind() != Term::Kind::MVar)
      fail("substitution body must be a metavariable", at);
    // Copy: parsing the entries may grow the metavariable table.
    Ctx mvCtx = (*mvars)[body.head()].ctx;
    std::string mvName = (*mvars)[body.head()].name;
    std::vector<Term> reps;
    if (peek().kind != Token::RBrack) {
      size_t i = 0;
      while (true) {
        std::optional<SortId> slotSort;
        if (i < mvCtx.size()) slotSort = mvCtx[i];
        reps.push_back(parseTerm(slotSort, scope));
        ++i;
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::RBrack, "']'");
    if (reps.size() != mvCtx.size())
      fail("metavariable '" + mvName + "' needs " + std::to_string(mvCtx.size()) +
               " substitution entries, got " + std::to_string(reps.size()),
           at);
    return Term::subst(std::move(body), std::move(reps));
  }

  Term parseCall(const std::string& name, Scope& scope, const Token& at) {
    int c = sig.conId(name);
    if (c >= 0) return parseConCall(c, scope, at);
    int o = sig.opId(name);
    if (o >= 0) return parseOpCall(o, scope, at);
    fail("unknown constructor or operation '" + name + "'", at);
  }

  Term parseConCall(int c, Scope& scope, const Token& at) {
    const ConDecl& con = sig.cons[c];
    expect(Token::LParen, "'('");
    std::vector<Term> args;
    std::vector<int> binders;
    size_t i = 0;
    if (peek().kind != Token::RParen) {
      while (true) {
        if (i >= con.args.size())
          fail("too many arguments for constructor '" + con.name + "'", peek());
        // Optional binder prefix: one or more names followed by '.'.
        std::vector<std::string> names;
        size_t ahead = 0;
        while (peek(ahead).kind == Token::Ident) ++ahead;
        bool hasBinders = ahead > 0 && peek(ahead).kind == Token::Dot;
        if (hasBinders) {
          for (size_t b = 0; b < ahead; ++b) names.push_back(next().text);
          next();  // '.'
        }
        if (names.size() != con.args[i].binders.size())
          fail("argument " + std::to_string(i + 1) + " of '" + con.name + "' binds " +
                   std::to_string(con.args[i].binders.size()) + " variables, got " +
                   std::to_string(names.size()),
               peek());
        for (size_t b = 0; b < names.size(); ++b)
          scope.emplace_back(names[b], con.args[i].binders[b]);
        args.push_back(parseTerm(con.args[i].sort, scope));
        for (size_t b = 0; b < names.size(); ++b) scope.pop_back();
        binders.push_back(static_cast<int>(con.args[i].binders.size()));
        ++i;
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::RParen, "')'");
    if (i != con.args.size())
      fail("constructor '" + con.name + "' expects " + std::to_string(con.args.size()) +
               " arguments, got " + std::to_string(i),
           at);
    return Term::con(c, std::move(args), binders);
  }

  Term parseOpCall(int o, Scope& scope, const Token& at) {
    const OpDecl& op = sig.ops[o];
    expect(Token::LParen, "'('");
    Term main = parseTerm(op.mainSort, scope);
    std::vector<Term> aux;
    if (peek().kind == Token::Semi) {
      next();
      size_t j = 0;
      while (true) {
        std::optional<SortId> s;
        if (j < op.aux.size()) s = op.aux[j];
        aux.push_back(parseTerm(s, scope));
        ++j;
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::RParen, "')'");
    if (aux.size() != op.aux.size())
      fail("operation '" + op.name + "' expects " + std::to_string(op.aux.size()) +
               " auxiliary arguments, got " + std::to_string(aux.size()),
           at);
    return Term::opcall(o, std::move(main), std::move(aux));
  }

  Term foldJuxt(const Term& left, const Term& right, const Scope& scope, const Token& at) {
    SortId sa = leastSortOrFail(left, scope, at);
    SortId sb = leastSortOrFail(right, scope, at);
    std::vector<int> fits;
    for (const char* name : {"app", "capp", "cappr"}) {
      int c = sig.conId(name);
      if (c < 0) continue;
      const ConDecl& con = sig.cons[c];
      if (con.args.size() != 2 || !con.args[0].binders.empty() ||
          !con.args[1].binders.empty())
        continue;
      if (sig.sortLeq(sa, con.args[0].sort) && sig.sortLeq(sb, con.args[1].sort))
        fits.push_back(c);
    }
    if (fits.empty()) fail("no binary constructor fits this juxtaposition", at);
    if (fits.size() > 1) fail("ambiguous juxtaposition", at);
    return Term::con(fits[0], {left, right}, {});
  }

  // ---- transitions and declarations ---------------------------------------

  int scanEdgeAhead() {
    // A '-' can never occur inside a term, so the next Dash begins the edge.
    size_t d = pos;
    while (toks[d].kind != Token::Dash) {
      if (toks[d].kind == Token::Newline || toks[d].kind == Token::End)
        fail("expected a transition 'term -edge-> term'", toks[d]);
      ++d;
    }
    if (toks[d + 1].kind != Token::Ident) fail("expected an edge name after '-'", toks[d + 1]);
    int e = sig.edgeId(toks[d + 1].text);
    if (e < 0) fail("unknown edge '" + toks[d + 1].text + "'", toks[d + 1]);
    return e;
  }

  struct Transition {
    Term src;
    int edge;
    std::vector<Term> labels;
    Term tgt;
  };

  Transition parseTransition(Scope& scope) {
    int e = scanEdgeAhead();
    const EdgeDecl& edge = sig.edges[e];
    Transition tr;
    tr.edge = e;
    tr.src = parseTerm(edge.src, scope);
    expect(Token::Dash, "'-'");
    expectIdent("the edge name");
    if (peek().kind == Token::LBrack) {
      next();
      size_t i = 0;
      while (true) {
        std::optional<SortId> s;
        if (i < edge.labels.size()) s = edge.labels[i].sort;
        tr.labels.push_back(parseTerm(s, scope));
        ++i;
        if (peek().kind != Token::Comma) break;
        next();
      }
      expect(Token::RBrack, "']'");
    }
    expect(Token::Arrow, "'->'");
    tr.tgt = parseTerm(edge.tgt, scope);
    return tr;
  }

  // ---- declaration lines ---------------------------------------------------

  void parseSortDecl() {
    next();
    const Token& at = peek();
    std::string name = expectIdent("a sort name");
    if (sig.sortId(name) >= 0) fail("duplicate sort '" + name + "'", at);
    sig.addSort(name);
    expectLineEnd();
  }

  void parseSubsortDecl() {
    next();
    SortId sub = sortRef();
    expect(Token::Langle, "'<'");
    SortId super = sortRef();
    sig.addSubsort(sub, super);
    expectLineEnd();
  }

  void parseConDecl() {
    next();
    const Token& at = peek();
    std::string name = expectIdent("a constructor name");
    if (sig.conId(name) >= 0 || sig.opId(name) >= 0)
      fail("duplicate name '" + name + "'", at);
    expect(Token::Colon, "':'");
    ConDecl con;
    con.name = name;
    if (peek().kind != Token::Arrow) {
      while (true) {
        ConArg arg;
        if (peek().kind == Token::LBrack) {
          next();
          while (true) {
            arg.binders.push_back(sortRef());
            if (peek().kind != Token::Comma) break;
            next();
          }
          expect(Token::RBrack, "']'");
        }
        arg.sort = sortRef();
        con.args.push_back(std::move(arg));
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::Arrow, "'->'");
    con.result = sortRef();
    sig.cons.push_back(std::move(con));
    expectLineEnd();
  }

  void parseOpDecl() {
    next();
    const Token& at = peek();
    std::string name = expectIdent("an operation name");
    if (sig.conId(name) >= 0 || sig.opId(name) >= 0)
      fail("duplicate name '" + name + "'", at);
    expect(Token::Colon, "':'");
    OpDecl op;
    op.name = name;
    op.mainSort = sortRef();
    if (peek().kind == Token::Semi) {
      next();
      while (true) {
        op.aux.push_back(sortRef());
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::Arrow, "'->'");
    op.result = sortRef();
    sig.ops.push_back(std::move(op));
    expectLineEnd();
  }

  void parseEdgeDecl() {
    next();
    const Token& at = peek();
    std::string name = expectIdent("an edge name");
    if (sig.edgeId(name) >= 0) fail("duplicate edge '" + name + "'", at);
    expect(Token::Colon, "':'");
    EdgeDecl edge;
    edge.name = name;
    edge.src = sortRef();
    if (peek().kind == Token::LBrack) {
      next();
      while (true) {
        LabelSlot slot;
        slot.sort = sortRef();
        edge.labels.push_back(std::move(slot));
        if (peek().kind != Token::Comma) break;
        next();
      }
      expect(Token::RBrack, "']'");
    }
    expect(Token::Arrow, "'->'");
    edge.tgt = sortRef();
    sig.edges.push_back(std::move(edge));
    expectLineEnd();
  }

  void parseRuleDecl() {
    const Token& at = peek();
    next();
    RuleDecl rule;
    rule.name = expectIdent("a rule name");
    // Rule names may contain dashes: beta-prime, weak-pre-tau.
    while (peek().kind == Token::Dash && !peek().spaceBefore &&
           peek(1).kind == Token::Ident && !peek(1).spaceBefore) {
      next();
      rule.name += "-" + next().text;
    }
    rule.line = at.line;
    expect(Token::Colon, "':'");
    mode = Mode::Rule;
    mvars = &rule.mvars;
    Scope scope;
    while (peek().kind != Token::FatArrow) {
      Transition tr = parseTransition(scope);
      RulePremise prem;
      prem.src = std::move(tr.src);
      prem.edge = tr.edge;
      prem.labels = std::move(tr.labels);
      prem.targetTerm = tr.tgt;
      prem.target = tr.tgt.kind() == Term::Kind::MVar ? tr.tgt.head() : -1;
      rule.premises.push_back(std::move(prem));
      if (peek().kind == Token::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Token::FatArrow, "'=>'");
    Transition c = parseTransition(scope);
    rule.cSrc = std::move(c.src);
    rule.cEdge = c.edge;
    rule.cLabels = std::move(c.labels);
    rule.cTgt = std::move(c.tgt);
    mode = Mode::Concrete;
    mvars = nullptr;
    sig.rules.push_back(std::move(rule));
    expectLineEnd();
  }

  void parseClause(const std::string& opName, const Token& at) {
    int o = sig.opId(opName);
    if (o < 0)
      fail("expected a declaration keyword or a clause for a declared operation", at);
    const OpDecl& op = sig.ops[o];
    ClauseDecl clause;
    clause.op = o;
    clause.line = at.line;
    expect(Token::LParen, "'('");
    const Token& conTok = peek();
    std::string conName = expectIdent("a constructor name");
    int c = sig.conId(conName);
    if (c < 0) fail("unknown constructor '" + conName + "'", conTok);
    clause.con = c;
    const ConDecl& con = sig.cons[c];
    if (peek().kind == Token::LParen) {
      next();
      while (true) {
        clause.argNames.push_back(expectIdent("a metavariable name"));
        if (peek().kind != Token::Comma) break;
        next();
      }
      expect(Token::RParen, "')'");
    }
    if (clause.argNames.size() != con.args.size())
      fail("pattern for '" + conName + "' needs " + std::to_string(con.args.size()) +
               " argument names, got " + std::to_string(clause.argNames.size()),
           conTok);
    if (peek().kind == Token::Semi) {
      next();
      while (true) {
        clause.auxNames.push_back(expectIdent("an auxiliary parameter name"));
        if (peek().kind != Token::Comma) break;
        next();
      }
    }
    expect(Token::RParen, "')'");
    if (clause.auxNames.size() != op.aux.size())
      fail("operation '" + op.name + "' has " + std::to_string(op.aux.size()) +
               " auxiliary parameters, got " + std::to_string(clause.auxNames.size()),
           at);
    expect(Token::Eq, "'='");

    std::vector<RuleMVar> table;
    for (size_t i = 0; i < con.args.size(); ++i)
      table.push_back({clause.argNames[i], con.args[i].sort, con.args[i].binders});
    for (size_t j = 0; j < op.aux.size(); ++j)
      table.push_back({clause.auxNames[j], op.aux[j], Ctx{}});
    mode = Mode::Clause;
    mvars = &table;
    Scope scope;
    clause.rhs = parseTerm(op.result, scope);
    mode = Mode::Concrete;
    mvars = nullptr;
    sig.clauses.push_back(std::move(clause));
    expectLineEnd();
  }

  void parseFile() {
    while (true) {
      skipNewlines();
      if (peek().kind == Token::End) break;
      const Token& t = peek();
      if (t.kind != Token::Ident) fail("expected a declaration", t);
      if (t.text == "sort") parseSortDecl();
      else if (t.text == "subsort") parseSubsortDecl();
      else if (t.text == "con") parseConDecl();
      else if (t.text == "op") parseOpDecl();
      else if (t.text == "edge") parseEdgeDecl();
      else if (t.text == "rule") parseRuleDecl();
      else {
        next();
        parseClause(t.text, t);
      }
    }
  }
};

}  // namespace

Signature parse_signature(const std::string& text) {
  Signature sig;
  Parser p(sig, text);
  p.parseFile();
  return sig;
}

Term parse_term(const Signature& sig, const std::string& text,
                const std::vector<std::pair<std::string, SortId>>& ctx) {
  Signature& mut = const_cast<Signature&>(sig);  // parser only reads in this mode
  Parser p(mut, text);
  p.skipNewlines();
  Scope scope(ctx.begin(), ctx.end());
  Term t = p.parseTerm(std::nullopt, scope);
  p.skipNewlines();
  if (p.peek().kind != Token::End)
    throw ParseError("unexpected trailing input", p.peek().line, p.peek().col);
  return t;
}

}  // namespace howebench
