#include "msl/parser.hpp"

#include <cctype>
#include <map>

#include "msl/condense.hpp"
#include "msl/unify.hpp"

namespace msl {

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void skipWs() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
        advance();
      else
        break;
    }
  }
  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  bool eof() {
    skipWs();
    return pos >= text.size();
  }
  char peek() {
    skipWs();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool peekIs(const std::string& s) {
    skipWs();
    return text.compare(pos, s.size(), s) == 0;
  }
  bool tryConsume(const std::string& s) {
    if (!peekIs(s)) return false;
    // "=" must not swallow the start of "!=" context; callers order checks
    for (size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }
  void expect(const std::string& s) {
    if (!tryConsume(s)) throw ParseError("expected '" + s + "'", line, col);
  }
  std::string ident() {
    skipWs();
    if (pos >= text.size() ||
        !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      throw ParseError("expected identifier", line, col);
    std::string out;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      out += text[pos];
      advance();
    }
    return out;
  }
};

struct ClauseScope {
  std::map<std::string, int> varIds;
};

bool isVarName(const std::string& n) {
  return std::isupper(static_cast<unsigned char>(n[0])) || n[0] == '_';
}

TermPtr parseTerm(Lexer& lx, ProverContext& ctx, ClauseScope& scope);

TermPtr finishFunction(Lexer& lx, ProverContext& ctx, ClauseScope& scope,
                       const std::string& name, int line, int col) {
  std::vector<TermPtr> args;
  if (lx.tryConsume("(")) {
    args.push_back(parseTerm(lx, ctx, scope));
    while (lx.tryConsume(",")) args.push_back(parseTerm(lx, ctx, scope));
    lx.expect(")");
  }
  try {
    int f = ctx.sig.addFunc(name, static_cast<int>(args.size()));
    return mkFun(f, std::move(args));
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what(), line, col);
  }
}

TermPtr parseTerm(Lexer& lx, ProverContext& ctx, ClauseScope& scope) {
  int line = lx.line, col = lx.col;
  std::string name = lx.ident();
  if (isVarName(name)) {
    auto it = scope.varIds.find(name);
    if (it == scope.varIds.end())
      it = scope.varIds.emplace(name, ctx.sig.freshVar(name)).first;
    return mkVar(it->second);
  }
  return finishFunction(lx, ctx, scope, name, line, col);
}

// `name(term,...)` with the root symbol not yet committed to the signature.
struct Callable {
  std::string name;
  std::vector<TermPtr> args;
  bool parens = false;
  bool isVar = false;
  TermPtr varTerm;
  int line, col;
};

// Predicate names may be capitalized (the literal position disambiguates);
// inside terms a capitalized bare name is always a variable.
Callable parseCallable(Lexer& lx, ProverContext& ctx, ClauseScope& scope) {
  Callable out;
  out.line = lx.line;
  out.col = lx.col;
  out.name = lx.ident();
  if (lx.tryConsume("(")) {
    out.parens = true;
    out.args.push_back(parseTerm(lx, ctx, scope));
    while (lx.tryConsume(",")) out.args.push_back(parseTerm(lx, ctx, scope));
    lx.expect(")");
    return out;
  }
  if (isVarName(out.name)) {
    out.isVar = true;
    auto it = scope.varIds.find(out.name);
    if (it == scope.varIds.end())
      it = scope.varIds.emplace(out.name, ctx.sig.freshVar(out.name)).first;
    out.varTerm = mkVar(it->second);
  }
  return out;
}

TermPtr callableAsTerm(const Callable& c, ProverContext& ctx) {
  if (c.isVar) return c.varTerm;
  if (isVarName(c.name))
    throw ParseError("variable '" + c.name + "' cannot take arguments", c.line, c.col);
  try {
    int f = ctx.sig.addFunc(c.name, static_cast<int>(c.args.size()));
    return mkFun(f, c.args);
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what(), c.line, c.col);
  }
}

Atom callableAsAtom(const Callable& c, ProverContext& ctx) {
  if (c.isVar) throw ParseError("predicate expected, got variable", c.line, c.col);
  if (!c.parens || c.args.empty())
    throw ParseError("literal requires at least one argument", c.line, c.col);
  try {
    int p = ctx.sig.addPred(c.name, static_cast<int>(c.args.size()));
    return Atom{p, c.args};
  } catch (const std::runtime_error& e) {
    throw ParseError(e.what(), c.line, c.col);
  }
}

Atom parseAtom(Lexer& lx, ProverContext& ctx, ClauseScope& scope) {
  return callableAsAtom(parseCallable(lx, ctx, scope), ctx);
}

void parseConstraint(Lexer& lx, ProverContext& ctx, ClauseScope& scope, Constraint& cons) {
  do {
    int line = lx.line, col = lx.col;
    TermPtr lhs = parseTerm(lx, ctx, scope);
    lx.expect("!=");
    TermPtr rhs = parseTerm(lx, ctx, scope);
    if (!isStraight(rhs))
      throw ParseError("constraint right-hand side is not straight", line, col);
    std::set<int> lv = vars(lhs);
    for (int v : vars(rhs))
      if (lv.count(v))
        throw ParseError("constraint sides share variable '" + ctx.sig.varName(v) + "'",
                         line, col);
    cons.add(AtomicConstraint{lhs, rhs});
  } while (lx.tryConsume(","));
}

} // namespace

Problem parseProblem(const std::string& text) {
  Problem prob;
  ProverContext& ctx = prob.ctx;
  Lexer lx(text);
  while (!lx.eof()) {
    ClauseScope scope;
    Clause cl;
    Constraint cons;
    if (!lx.tryConsume("->")) {
      Callable first = parseCallable(lx, ctx, scope);
      if (lx.peekIs("=") && !lx.peekIs("=>")) {
        // unit disequation s = t -> .
        int line = lx.line, col = lx.col;
        lx.expect("=");
        TermPtr s = callableAsTerm(first, ctx);
        TermPtr t = parseTerm(lx, ctx, scope);
        lx.expect("->");
        lx.expect(".");
        if (unifyTerms(s, t))
          throw ParseError("disequation sides are unifiable", line, col);
        prob.disequations.emplace_back(s, t);
        continue;
      }
      cl.ante.push_back(callableAsAtom(first, ctx));
      while (lx.tryConsume(",")) cl.ante.push_back(parseAtom(lx, ctx, scope));
      lx.expect("->");
    }
    if (!lx.peekIs("|") && !lx.peekIs(".")) {
      cl.succ.push_back(parseAtom(lx, ctx, scope));
      while (lx.tryConsume(",")) cl.succ.push_back(parseAtom(lx, ctx, scope));
    }
    if (lx.tryConsume("|")) parseConstraint(lx, ctx, scope, cons);
    lx.expect(".");
    ConstrainedClause cc;
    cc.cl = std::move(cl);
    cc.cons = std::move(cons);
    cc.id = ctx.freshId();
    prob.clauses.push_back(std::move(cc));
  }
  ctx.sig.ensureConstant();
  // normalize constraints; unsolvable clauses have no ground instances
  std::vector<ConstrainedClause> kept;
  for (auto& cc : prob.clauses) {
    cc.cons = normalize(cc.cons, ctx.sig);
    if (cc.cons.isBottom() || !isSolvable(cc.cons, ctx.sig)) continue;
    kept.push_back(std::move(cc));
  }
  prob.clauses = std::move(kept);
  return prob;
}

namespace {

struct DisplayNames {
  std::map<int, std::string> byId;
  int counter = 0;
  std::string of(int v) {
    auto it = byId.find(v);
    if (it == byId.end())
      it = byId.emplace(v, "X" + std::to_string(++counter)).first;
    return it->second;
  }
};

std::string renderTerm(const TermPtr& t, const Signature& sig, DisplayNames& names) {
  if (t->isVar) return names.of(t->sym);
  std::string s = sig.func(t->sym).name;
  if (t->args.empty()) return s;
  s += "(";
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) s += ",";
    s += renderTerm(t->args[i], sig, names);
  }
  return s + ")";
}

std::string renderAtom(const Atom& a, const Signature& sig, DisplayNames& names) {
  std::string s = sig.pred(a.pred).name + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += renderTerm(a.args[i], sig, names);
  }
  return s + ")";
}

} // namespace

std::string renderProblem(const Problem& p) {
  const Signature& sig = p.ctx.sig;
  std::string out;
  for (const auto& cc : p.clauses) {
    DisplayNames names;
    std::string s;
    for (size_t i = 0; i < cc.cl.ante.size(); ++i) {
      if (i) s += ", ";
      s += renderAtom(cc.cl.ante[i], sig, names);
    }
    if (!cc.cl.ante.empty()) s += " ";
    s += "->";
    for (size_t i = 0; i < cc.cl.succ.size(); ++i) {
      s += i ? ", " : " ";
      s += renderAtom(cc.cl.succ[i], sig, names);
    }
    if (!cc.cons.isTop()) {
      s += " | ";
      for (size_t i = 0; i < cc.cons.conjuncts().size(); ++i) {
        if (i) s += ", ";
        s += renderTerm(cc.cons.conjuncts()[i].lhs, sig, names) + " != " +
             renderTerm(cc.cons.conjuncts()[i].rhs, sig, names);
      }
    }
    out += s + ".\n";
  }
  for (const auto& [s, t] : p.disequations) {
    DisplayNames names;
    out += renderTerm(s, sig, names) + " = " + renderTerm(t, sig, names) + " -> .\n";
  }
  return out;
}

namespace {

bool variantTermPair(const TermPtr& a, const TermPtr& b, std::map<int, int>& fwd,
                     std::map<int, int>& bwd) {
  if (a->isVar != b->isVar) return false;
  if (a->isVar) {
    auto f = fwd.find(a->sym);
    auto g = bwd.find(b->sym);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a->sym] = b->sym;
      bwd[b->sym] = a->sym;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b->sym && g->second == a->sym;
  }
  if (a->sym != b->sym || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!variantTermPair(a->args[i], b->args[i], fwd, bwd)) return false;
  return true;
}

} // namespace

bool problemsEqual(const Problem& a, const Problem& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  if (a.disequations.size() != b.disequations.size()) return false;
  // signatures must agree on names/arities for shared symbol ids to line up
  if (a.ctx.sig.numFuncs() != b.ctx.sig.numFuncs() ||
      a.ctx.sig.numPreds() != b.ctx.sig.numPreds())
    return false;
  for (int f = 0; f < a.ctx.sig.numFuncs(); ++f)
    if (a.ctx.sig.func(f).name != b.ctx.sig.func(f).name ||
        a.ctx.sig.func(f).arity != b.ctx.sig.func(f).arity)
      return false;
  for (int q = 0; q < a.ctx.sig.numPreds(); ++q)
    if (a.ctx.sig.pred(q).name != b.ctx.sig.pred(q).name ||
        a.ctx.sig.pred(q).arity != b.ctx.sig.pred(q).arity)
      return false;
  for (size_t i = 0; i < a.clauses.size(); ++i)
    if (!variant(a.clauses[i], b.clauses[i], a.ctx.sig)) return false;
  for (size_t i = 0; i < a.disequations.size(); ++i) {
    std::map<int, int> fwd, bwd;
    if (!variantTermPair(a.disequations[i].first, b.disequations[i].first, fwd, bwd))
      return false;
    if (!variantTermPair(a.disequations[i].second, b.disequations[i].second, fwd, bwd))
      return false;
  }
  return true;
}

} // namespace msl
