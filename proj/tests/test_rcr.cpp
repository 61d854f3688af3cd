#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "rcr/random.hpp"
#include "rcr/rcr.hpp"

#include <set>

using namespace rcr;

TEST_CASE("A1 refinement")
{
    Structure A = load_fixture("A1.struct");
    RefinementTrace t = rcr_run(A);
    CHECK(t.class_count(0) == 2);
    CHECK(t.stable_round == 1);
    CHECK(t.stable);
    CHECK(t.class_count(1) == 7);
    auto h = t.histogram(0);
    std::multiset<std::size_t> sizes;
    for (auto [c, n] : h)
        sizes.insert(n);
    CHECK(sizes == std::multiset<std::size_t>{1, 6});
}

TEST_CASE("single tuple is stable at round 0")
{
    Structure A = parse_structure("signature: R/3\nR(a,b,a)\n");
    RefinementTrace t = rcr_run(A);
    CHECK(t.stable_round == 0);
    CHECK(t.class_count(0) == 1);
    CHECK(t.rounds() == 1);
}

TEST_CASE("distinguishing the fixtures")
{
    Structure A1 = load_fixture("A1.struct"), B1 = load_fixture("B1.struct");
    auto v = rcr_distinguishes(A1, B1);
    REQUIRE(v);
    CHECK(v->round == 1);
    CHECK_FALSE(rcr_distinguishes(A1, A1));
    Structure A2 = load_fixture("A2.struct"), B2 = load_fixture("B2.struct");
    CHECK(rcr_distinguishes(A2, B2));
}

TEST_CASE("unequal sizes are distinguished in round 0")
{
    Structure A = parse_structure("signature: E/2\nE(a,b)\nE(b,c)\n");
    Structure B = parse_structure("signature: E/2\nE(a,b)\n");
    auto v = rcr_distinguishes(A, B);
    REQUIRE(v);
    CHECK(v->round == 0);
}

TEST_CASE("joint run of A with itself doubles the histogram")
{
    Structure A = load_fixture("A2.struct");
    JointRun jr = rcr_joint(A, A);
    CHECK_FALSE(jr.verdict);
    RefinementTrace t = rcr_run(A);
    CHECK(jr.trace.class_count(0) == t.class_count(0));
    for (auto [c, n] : jr.trace.histogram(0))
        CHECK(n % 2 == 0);
}

TEST_CASE("monotone refinement and isomorphism invariance")
{
    Rng rng(17);
    for (int it = 0; it < 200; ++it) {
        Signature sig = random_signature(rng, 3, 3);
        Structure A = random_structure(sig, {8, 10, SIZE_MAX, 0.15}, rng);
        RefinementTrace t = rcr_run(A);
        CHECK(t.stable_round <= A.tup().size());
        for (std::size_t i = 0; i + 1 < t.rounds(); ++i) {
            CHECK(t.class_count(i) < t.class_count(i + 1));
            std::map<ColorId, ColorId> back;
            for (std::size_t a = 0; a < A.tup().size(); ++a) {
                auto [p, fresh] = back.emplace(t.colors[i + 1][a], t.colors[i][a]);
                CHECK(p->second == t.colors[i][a]);
            }
        }
        Structure P = random_isomorphic_copy(A, rng);
        RefinementTrace tp = rcr_run(P);
        CHECK(tp.stable_round == t.stable_round);
        for (std::size_t i = 0; i < t.rounds(); ++i) {
            std::multiset<std::size_t> ha, hp;
            for (auto [c, n] : t.histogram(i))
                ha.insert(n);
            for (auto [c, n] : tp.histogram(i))
                hp.insert(n);
            CHECK(ha == hp);
        }
        CHECK_FALSE(rcr_distinguishes(A, P));
    }
}

TEST_CASE("trace csv")
{
    Structure A = load_fixture("A1.struct");
    RefinementTrace t = rcr_run(A);
    std::string csv = trace_csv(A, t);
    CHECK(csv.rfind("round,relation,tuple_index,color_id\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 7 * 2);
    CHECK_FALSE(interner_log(A, t).empty());
}

TEST_CASE("canonical partition")
{
    CHECK(canonical_partition({5, 3, 5, 9}) == std::vector<std::uint32_t>{0, 1, 0, 2});
}
