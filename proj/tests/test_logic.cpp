#include "doctest.h"
#include "support.hpp"

#include "rcr/game.hpp"
#include "rcr/logic.hpp"
#include "rcr/random.hpp"

#include <set>

using namespace rcr;

TEST_CASE("triangle sentence on the running example")
{
    Structure A = load_fixture("A1.struct"), B = load_fixture("B1.struct");
    FormulaPtr f = parse_sexp(read_file(fixture("ex54.sexp")), A.signature());
    WfInfo w = check_wf(f, A.signature());
    CHECK(w.free.empty());
    CHECK(w.gd == 1);
    CHECK(evaluate(f, A));
    CHECK_FALSE(evaluate(f, B));
}

TEST_CASE("triangle sentence on the second example")
{
    Structure A = load_fixture("A2.struct"), B = load_fixture("B2.struct");
    FormulaPtr f = parse_sexp(read_file(fixture("a2.sexp")), A.signature());
    CHECK(check_wf(f, A.signature()).gd == 1);
    CHECK(evaluate(f, A));
    CHECK_FALSE(evaluate(f, B));
}

TEST_CASE("atoms and equality")
{
    Structure A = load_fixture("A1.struct");
    Signature sig = A.signature();
    FormulaPtr e = parse_sexp("(atom E v1 v2)", sig);
    WfInfo w = check_wf(e, sig);
    CHECK(w.free == std::vector<Var>{1, 2});
    CHECK(w.gd == 0);
    Element v = *A.find_element("v");
    CHECK(evaluate(make_eq(1, 2), A, {Evaluator::UNSET, v, v}));
    CHECK_FALSE(evaluate(make_eq(1, 2), A, {Evaluator::UNSET, v, *A.find_element("w")}));
    CHECK(evaluate(e, A, {Evaluator::UNSET, *A.find_element("u"), v}));
}

TEST_CASE("well-formedness errors")
{
    Signature sig({{"E", 2}, {"U", 1}});
    CHECK_THROWS_AS(check_wf(parse_sexp("(geq 1 (vars v1) (guard U v1) (atom E v1 v2))", sig), sig), WfError);
    CHECK_THROWS_AS(check_wf(parse_sexp("(geq 1 (vars v3) (guard E v1 v2) (eq v1 v2))", sig), sig), WfError);
    CHECK_THROWS_AS(check_wf(parse_sexp("(geq 1 (vars v1 v1) (guard E v1 v1) (eq v1 v1))", sig), sig), WfError);
    CHECK_THROWS_AS(check_wf(parse_sexp("(geq 0 (vars v1) (guard U v1) (eq v1 v1))", sig), sig), WfError);
    CHECK_THROWS_AS(check_wf(make_atom(0, {1}), sig), WfError);
    CHECK_THROWS(parse_sexp("(atom F v1)", sig));
    CHECK_THROWS(parse_sexp("(atom E v1 x)", sig));
    CHECK_THROWS(parse_sexp("(and (eq v1 v2)", sig));
}

TEST_CASE("exactly-n is the conjunction of two bounds")
{
    Structure A = load_fixture("A1.struct");
    Signature sig = A.signature();
    SymbolId E = *sig.find("E");
    FormulaPtr body = make_not(make_eq(1, 2));
    for (std::uint64_t n = 0; n <= 7; ++n) {
        bool eq = evaluate(make_exactly(n, {1, 2}, E, {1, 2}, body), A);
        bool ge = n == 0 || evaluate(make_geq(n, {1, 2}, E, {1, 2}, body), A);
        bool gt = evaluate(make_geq(n + 1, {1, 2}, E, {1, 2}, body), A);
        CHECK(eq == (ge && !gt));
        CHECK(eq == (n == 6));
    }
}

TEST_CASE("sexp round trip")
{
    Signature sig({{"E", 2}, {"R", 6}});
    std::string text = read_file(fixture("ex54.sexp"));
    FormulaPtr f = parse_sexp(text, sig);
    std::string s = to_sexp(f, sig);
    CHECK(to_sexp(parse_sexp(s, sig), sig) == s);
    CHECK(tree_size(f) == 6);
    CHECK_THROWS_AS(to_sexp(f, sig, 3), BudgetExceeded);
}

TEST_CASE("round-0 color formulas")
{
    Structure A = load_fixture("A1.struct"), B = load_fixture("B1.struct");
    JointRun jr = rcr_joint(A, B);
    Synthesizer syn(jr.u.joint, jr.trace);
    const Structure &J = jr.u.joint;
    std::set<ColorId> c0(jr.trace.colors[0].begin(), jr.trace.colors[0].end());
    CHECK(c0.size() == 2);
    for (ColorId c : c0) {
        FormulaPtr f = syn.color_formula(0, c);
        CHECK(check_wf(f, J.signature()).gd == 0);
        Evaluator ev(J);
        std::size_t hits_a = 0, hits_b = 0;
        for (std::size_t t = 0; t < J.tup().size(); ++t) {
            const Tuple &v = J.tup()[t].vec;
            if (static_cast<int>(v.size()) != jr.trace.interner.info(c).arity)
                continue;
            std::vector<Element> asg(v.size() + 1, Evaluator::UNSET);
            std::copy(v.begin(), v.end(), asg.begin() + 1);
            bool holds = ev.eval(f, asg);
            CHECK(holds == (jr.trace.colors[0][t] == c));
            if (holds)
                (jr.u.tup_side[t] ? hits_b : hits_a)++;
        }
        CHECK(hits_a == hits_b);
        CHECK((hits_a == 6 || hits_a == 1));
    }
}

TEST_CASE("distinguishing sentences")
{
    Structure A = load_fixture("A1.struct"), B = load_fixture("B1.struct");
    auto s = distinguishing_sentence(A, B);
    REQUIRE(s);
    CHECK(check_wf(s->formula, A.signature()).free.empty());
    CHECK(evaluate(s->formula, A) == s->true_on_a);
    CHECK(evaluate(s->formula, B) != s->true_on_a);
    CHECK_FALSE(distinguishing_sentence(A, A));
    Structure A2 = load_fixture("A2.struct"), B2 = load_fixture("B2.struct");
    auto s2 = distinguishing_sentence(A2, B2);
    REQUIRE(s2);
    CHECK(evaluate(s2->formula, A2) == s2->true_on_a);
    CHECK(evaluate(s2->formula, B2) != s2->true_on_a);
    Structure small = parse_structure("signature: E/2, R/6\nE(1,2)\n");
    auto s3 = distinguishing_sentence(A, small);
    REQUIRE(s3);
    CHECK(s3->true_on_a);
    CHECK(evaluate(s3->formula, A));
    CHECK_FALSE(evaluate(s3->formula, small));
}

TEST_CASE("formula disagreement gives Spoiler a gd-round win")
{
    Rng rng(13);
    int checked = 0;
    for (int it = 0; it < 80; ++it) {
        Signature sig = random_signature(rng, 2, 2);
        Structure A = random_structure(sig, {4, 4, 4, 0.2}, rng);
        Structure B = random_same_size(A, 4, rng);
        auto s = distinguishing_sentence(A, B);
        if (!s)
            continue;
        ++checked;
        GuardedGame g(A, B);
        CHECK(g.spoiler_wins(check_wf(s->formula, sig).gd));
    }
    CHECK(checked > 0);
}
