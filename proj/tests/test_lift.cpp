#include "doctest.h"
#include "testutil.hpp"

#include "msl/foar.hpp"

using namespace msl;
using test::Builder;

namespace {

FoArResult runFoar(ProverContext& ctx, std::vector<ConstrainedClause> clauses,
                   int maxIter = 20) {
  FoArConfig cfg;
  cfg.maxIterations = maxIter;
  return foArSolve(std::move(clauses), ctx, cfg);
}

} // namespace

TEST_CASE("skeleton examples") {
  ProverContext ctx;
  Builder b(ctx);
  SUBCASE("repeated variable becomes linear") {
    auto [t, pi] = skeleton(b.t("f(X,X)"), Constraint::top(), ctx);
    CHECK(isLinear(t));
    CHECK(pi.isTop());
    CHECK(t->args[0]->isVar);
    CHECK(t->args[1]->isVar);
    CHECK(t->args[0]->sym != t->args[1]->sym);
  }
  SUBCASE("constraints are copied per occurrence") {
    ProverContext c2;
    Builder b2(c2);
    c2.sig.addFunc("b", 0);
    Constraint pi = test::cons1(c2, b2.t("X"), b2.t("a"));
    auto [t, out] = skeleton(b2.t("f(X,X)"), pi, c2);
    CHECK(isLinear(t));
    CHECK(out.conjuncts().size() == 2);
  }
  SUBCASE("linear terms are fixed points") {
    auto [t, pi] = skeleton(b.t("f(X,Y)"), Constraint::top(), ctx);
    CHECK(equal(t, b.t("f(X,Y)")));
  }
}

TEST_CASE("extract_core: trivial refutation") {
  ProverContext ctx;
  Builder b(ctx);
  auto c1 = test::mk(ctx, {}, {b.at("P(a)")});
  auto c2 = test::mk(ctx, {b.at("P(X)")}, {});
  AncestorIndex idx;
  idx.byId[c1.id] = c1;
  idx.byId[c2.id] = c2;
  auto sat = saturate({c1, c2}, ctx);
  REQUIRE(sat.verdict == SaturationResult::Verdict::EmptyClause);
  auto core = extractCore(sat, idx, ctx);
  CHECK(core.complete);
  CHECK(core.entries.size() == 2);
  for (const auto& e : core.entries) {
    Clause g = core.groundClauseOf(e, idx);
    for (const auto& a : g.ante) CHECK(show(a, ctx.sig) == "P(a)");
    for (const auto& a : g.succ) CHECK(show(a, ctx.sig) == "P(a)");
  }
  CHECK(coreGroundUnsat(core, idx, ctx.sig));
}

TEST_CASE("extract_core: linearized pair grounds to the worked example") {
  // the monadic image of {-> P(x,x'); P(a,b) ->}
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("T(fP(X,Xp))")});
  auto neg = test::mk(ctx, {b.at("T(fP(a,b))")}, {});
  AncestorIndex idx;
  idx.byId[pos.id] = pos;
  idx.byId[neg.id] = neg;
  auto sat = saturate({pos, neg}, ctx);
  REQUIRE(sat.verdict == SaturationResult::Verdict::EmptyClause);
  auto core = extractCore(sat, idx, ctx);
  REQUIRE(core.entries.size() == 2);
  CHECK(core.complete);
  for (const auto& e : core.entries) {
    Clause g = core.groundClauseOf(e, idx);
    if (!g.succ.empty())
      CHECK(show(g.succ[0], ctx.sig) == "T(fP(a,b))");
    else
      CHECK(show(g.ante[0], ctx.sig) == "T(fP(a,b))");
  }
  CHECK(coreGroundUnsat(core, idx, ctx.sig));
}

TEST_CASE("lift succeeds on untransformed clauses") {
  ProverContext ctx;
  Builder b(ctx);
  auto c1 = test::mk(ctx, {}, {b.at("P(a)")});
  auto c2 = test::mk(ctx, {b.at("P(X)")}, {});
  auto res = approximate({c1, c2}, ctx);
  auto sat = saturate(res.clauses, ctx);
  REQUIRE(sat.verdict == SaturationResult::Verdict::EmptyClause);
  auto core = extractCore(sat, res.index, ctx);
  auto lo = lift(core, res.index, ctx);
  CHECK(lo.lifted);
  REQUIRE(lo.refutation.size() == 2);
}

TEST_CASE("lift detects the linear conflict on P(x,x) vs P(a,b)") {
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto neg = test::mk(ctx, {b.at("P(a,b)")}, {});
  auto res = approximate({pos, neg}, ctx);
  auto sat = saturate(res.clauses, ctx);
  REQUIRE(sat.verdict == SaturationResult::Verdict::EmptyClause);
  auto core = extractCore(sat, res.index, ctx);
  auto lo = lift(core, res.index, ctx);
  REQUIRE_FALSE(lo.lifted);
  REQUIRE(lo.conflict);
  CHECK(lo.conflict->originalClause == pos.id);
  CHECK(ctx.sig.varName(lo.conflict->originalVar) == "X");
  bool ab = show(lo.conflict->w1, ctx.sig) == "a" && show(lo.conflict->w2, ctx.sig) == "b";
  bool ba = show(lo.conflict->w1, ctx.sig) == "b" && show(lo.conflict->w2, ctx.sig) == "a";
  CHECK((ab || ba));
}

TEST_CASE("foar: linear refinement example reaches SAT in one refinement") {
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto neg = test::mk(ctx, {b.at("P(a,b)")}, {});
  auto r = runFoar(ctx, {pos, neg});
  CHECK(r.verdict == FoArResult::Verdict::Sat);
  REQUIRE(r.iterations.size() == 2); // one refinement, then SAT
  CHECK_FALSE(r.iterations[0].approxSat);
  CHECK_FALSE(r.iterations[0].lifted);
  // the refinement is (P(x,x); x != a) plus P(a,a)
  REQUIRE(r.iterations[0].refinedClauses.size() == 2);
  const auto& cons = r.iterations[0].refinedClauses[0];
  const auto& inst = r.iterations[0].refinedClauses[1];
  CHECK(cons.cons.conjuncts().size() == 1);
  CHECK(show(cons.cons.conjuncts()[0].rhs, ctx.sig) == "a");
  CHECK(show(inst.cl.succ[0], ctx.sig) == "P(a,a)");
}

TEST_CASE("foar: same-position clash refines with the straight path f(v,a)") {
  // N = {P(x,x); P(f(x,a),f(y,b)) ->} from the worked refinement examples
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto neg = test::mk(ctx, {b.at("P(f(X,a),f(Y,b))")}, {});
  auto r = runFoar(ctx, {pos, neg});
  CHECK(r.verdict == FoArResult::Verdict::Sat);
  REQUIRE(r.iterations.size() == 2);
  REQUIRE(r.iterations[0].refinedClauses.size() == 2);
  const auto& cons = r.iterations[0].refinedClauses[0];
  const auto& inst = r.iterations[0].refinedClauses[1];
  REQUIRE(cons.cons.conjuncts().size() == 1);
  // x != f(v,a)
  TermPtr rhs = cons.cons.conjuncts()[0].rhs;
  REQUIRE(!rhs->isVar);
  CHECK(ctx.sig.func(rhs->sym).name == "f");
  CHECK(rhs->args[0]->isVar);
  CHECK(show(rhs->args[1], ctx.sig) == "a");
  // P(f(x,a),f(x,a))
  REQUIRE(inst.cl.succ.size() == 1);
  const Atom& ia = inst.cl.succ[0];
  CHECK(equal(ia.args[0], ia.args[1]));
  CHECK(show(ia.args[0]->args[1], ctx.sig) == "a");
  CHECK(ia.args[0]->args[0]->isVar);
}

TEST_CASE("foar: cross-position clash produces the three-clause refinement") {
  // N = {P(x,x); P(f(a,b),f(x,x)) ->}
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto neg = test::mk(ctx, {b.at("P(f(a,b),f(X,X))")}, {});
  auto r = runFoar(ctx, {pos, neg});
  CHECK(r.verdict == FoArResult::Verdict::Sat);
  REQUIRE(!r.iterations.empty());
  const auto& pieces = r.iterations[0].refinedClauses;
  REQUIRE(pieces.size() == 3);
  // (P(x,x); x != f(a,v))
  REQUIRE(pieces[0].cons.conjuncts().size() == 1);
  TermPtr t1 = pieces[0].cons.conjuncts()[0].rhs;
  CHECK(show(t1->args[0], ctx.sig) == "a");
  CHECK(t1->args[1]->isVar);
  // (P(f(a,x),f(a,x)); x != a)
  REQUIRE(pieces[1].cons.conjuncts().size() == 1);
  CHECK(show(pieces[1].cons.conjuncts()[0].rhs, ctx.sig) == "a");
  CHECK(show(dedup(pieces[1].cl).succ[0].args[0]->args[0], ctx.sig) == "a");
  // P(f(a,a),f(a,a))
  CHECK(pieces[2].cons.isTop());
  CHECK(show(dedup(pieces[2].cl).succ[0].args[0], ctx.sig) == "f(a,a)");
}

TEST_CASE("foar: constraint-exclusion refinement enumerates the blocked constants") {
  // N = {P(x,x); (P(x,y) ->; x!=a, x!=b, y!=c, y!=d)} over {a,b,c,d}
  ProverContext ctx;
  Builder b(ctx);
  ctx.sig.addFunc("a", 0);
  ctx.sig.addFunc("b", 0);
  ctx.sig.addFunc("c", 0);
  ctx.sig.addFunc("d", 0);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  Constraint pi;
  pi.add(AtomicConstraint{b.t("X2"), b.t("a")});
  pi.add(AtomicConstraint{b.t("X2"), b.t("b")});
  pi.add(AtomicConstraint{b.t("Y2"), b.t("c")});
  pi.add(AtomicConstraint{b.t("Y2"), b.t("d")});
  Builder b2(ctx);
  Atom na{ctx.sig.addPred("P", 2), {b.t("X2"), b.t("Y2")}};
  auto neg = test::mk(ctx, {na}, {}, normalize(pi, ctx.sig));
  auto r = runFoar(ctx, {pos, neg});
  CHECK(r.verdict == FoArResult::Verdict::Sat);
  REQUIRE(!r.iterations.empty());
  const auto& pieces = r.iterations[0].refinedClauses;
  REQUIRE(pieces.size() == 3);
  // (P(x,x); x != a, x != b)
  CHECK(pieces[2].cons.conjuncts().size() == 2);
  // P(a,a) and P(b,b) in some order around the constrained clause
  std::set<std::string> instShown;
  instShown.insert(show(dedup(pieces[0].cl).succ[0], ctx.sig));
  instShown.insert(show(dedup(pieces[1].cl).succ[0], ctx.sig));
  CHECK(instShown == std::set<std::string>{"P(a,a)", "P(b,b)"});
}

TEST_CASE("foar: non-terminating refinement yields UNKNOWN with growing instances") {
  // N = {P(x,x); P(y,g(y)) ->}
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto neg = test::mk(ctx, {b.at("P(Y,g(Y))")}, {});
  auto r = runFoar(ctx, {pos, neg}, 5);
  CHECK(r.verdict == FoArResult::Verdict::Unknown);
  CHECK(r.iterations.size() == 5);
  int gs = 0;
  for (const auto& it : r.iterations) {
    REQUIRE(!it.refinedClauses.empty());
    // the instance clause of iteration i is P(g^i(x), g^i(x))
    const auto& inst = it.refinedClauses.back();
    REQUIRE(inst.cl.succ.size() == 1);
    Clause dd = dedup(inst.cl);
    const Atom& a = dd.succ[0];
    ++gs;
    CHECK(equal(a.args[0], a.args[1]));
    TermPtr t = a.args[0];
    int wraps = 0;
    while (!t->isVar && ctx.sig.func(t->sym).name == "g") {
      ++wraps;
      t = t->args[0];
    }
    CHECK(wraps == gs);
    CHECK(t->isVar);
  }
}

TEST_CASE("foar: lifted refutations replay to the empty clause") {
  ProverContext ctx;
  Builder b(ctx);
  auto c1 = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto c2 = test::mk(ctx, {b.at("P(f(Y),f(Y))")}, {});
  auto r = runFoar(ctx, {c1, c2});
  CHECK(r.verdict == FoArResult::Verdict::Unsat);
  REQUIRE(!r.refutation.empty());
  // instances are instances of their originals
  for (const auto& [id, inst] : r.refutation) {
    bool found = false;
    for (const auto& cc : std::vector<ConstrainedClause>{c1, c2})
      if (cc.id == id) found = true;
    CHECK(found);
  }
}

TEST_CASE("foar: refinement never re-admits a witnessed conflict") {
  ProverContext ctx;
  Builder b(ctx);
  auto pos = test::mk(ctx, {}, {b.at("P(X,X)")});
  auto neg = test::mk(ctx, {b.at("P(f(X,a),f(Y,b))")}, {});
  auto r = runFoar(ctx, {pos, neg}, 10);
  CHECK(r.verdict == FoArResult::Verdict::Sat);
  // collect conflict witnesses per iteration; later iterations must not
  // repeat an earlier one
  std::set<std::string> seen;
  for (const auto& it : r.iterations) {
    if (it.approxSat || it.lifted) continue;
    CHECK_FALSE(seen.count(it.conflictText));
    seen.insert(it.conflictText);
  }
}
