#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "rcr/acyclic.hpp"
#include "rcr/representations.hpp"

using namespace rcr;

TEST_CASE("GYO on the running example")
{
    for (const char *f : {"A1.struct", "B1.struct"}) {
        Structure A = load_fixture(f);
        auto J = gyo_join_tree(A);
        REQUIRE(J);
        CHECK(validate_join_tree(A, *J).ok);
        NodeId r = *A.tup_index(tup(A, {"1", "2", "3", "u", "v", "w"}));
        CHECK(J->neighbors(r).size() == 6);
    }
    CHECK_FALSE(gyo_join_tree(load_fixture("triangle.struct")));
    // Gaifman graph of A1 has cycles even though A1 is acyclic
    CHECK(gaifman(load_fixture("A1.struct")).size() > 5);
}

TEST_CASE("validate join trees")
{
    Structure A = load_fixture("A1.struct");
    CHECK(validate_join_tree(A, parse_join_tree(read_file(fixture("A1.jt")), A)).ok);
    // E-tuples in a line, R at the end
    JoinTree path = parse_join_tree("edge: (E,0) -- (E,1)\nedge: (E,1) -- (E,2)\nedge: (E,2) -- (E,3)\n"
                                    "edge: (E,3) -- (E,4)\nedge: (E,4) -- (E,5)\nedge: (E,5) -- (R,0)\n",
                                    A);
    JoinTreeCheck c = validate_join_tree(A, path);
    CHECK_FALSE(c.ok);
    REQUIRE(c.violating);
    // the element's occurrences really are disconnected in the path
    Element v = *c.violating;
    std::vector<std::uint32_t> occ = A.occurrences(v);
    CHECK(occ.size() >= 2);
    Structure one = parse_structure("signature: U/1\nU(a)\n");
    CHECK(validate_join_tree(one, JoinTree(1, {})).ok);
    CHECK_THROWS_AS(validate_join_tree(one, JoinTree(2, {{0, 1}})), Error);
    CHECK_THROWS_AS(JoinTree(3, {{0, 1}}), Error);
}

TEST_CASE("join tree text round trip")
{
    Structure A = load_fixture("A1.struct");
    JoinTree J = *gyo_join_tree(A);
    JoinTree K = parse_join_tree(serialize_join_tree(J, A), A);
    CHECK(K.edges().size() == 6);
    CHECK(validate_join_tree(A, K).ok);
    CHECK(join_tree_dot(J, A).find("graph") != std::string::npos);
}

TEST_CASE("GYO agrees with validation and with forests for binary signatures")
{
    Rng rng(41);
    Signature sig({{"E", 2}});
    for (int it = 0; it < 400; ++it) {
        Structure A = random_structure(sig, {6, static_cast<std::size_t>(rng.range(1, 7))}, rng);
        auto J = gyo_join_tree(A);
        if (J)
            CHECK(validate_join_tree(A, *J).ok);
        // Gaifman graph acyclic, counting each connected component
        auto es = gaifman(A);
        std::vector<Element> parent(A.universe_size());
        for (Element e = 0; e < parent.size(); ++e)
            parent[e] = e;
        auto find = [&](Element e) {
            while (parent[e] != e)
                e = parent[e] = parent[parent[e]];
            return e;
        };
        bool forest = true;
        for (auto [u, v] : es) {
            Element a = find(u), b = find(v);
            if (a == b)
                forest = false;
            else
                parent[a] = b;
        }
        std::size_t comps = 0;
        for (Element e = 0; e < parent.size(); ++e)
            comps += find(e) == e;
        // join trees only exist for connected Gaifman graphs here
        if (comps == 1)
            CHECK(J.has_value() == forest);
    }
}

TEST_CASE("structure from print")
{
    Signature sig({{"U", 1}, {"E", 2}, {"R", 6}});
    Print p;
    p.nodes.push_back({{0}, SimilarityType(1, 1, {{0, 0}}), UINT32_MAX, {}});
    PrintStructure ps = structure_from_print(sig, p);
    CHECK(ps.C.universe_size() == 1);
    CHECK(ps.C.tup().size() == 1);

    Print q;
    SimilarityType diag6(6, 6, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
    q.nodes.push_back({{2}, diag6, UINT32_MAX, {}});
    q.nodes.push_back({{1}, SimilarityType(2, 2, {{0, 0}, {1, 1}}), 0, SimilarityType(6, 2, {{0, 0}, {1, 1}})});
    PrintStructure qs = structure_from_print(sig, q);
    const Tuple &t0 = qs.C.tup()[qs.tup_of[0]].vec, &t1 = qs.C.tup()[qs.tup_of[1]].vec;
    CHECK(stp(t0, t1).str() == "{(1,1),(2,2)}");
    CHECK(qs.C.universe_size() == 6);
    CHECK(validate_join_tree(qs.C, qs.J).ok);

    // child equal entries contradict the parent's distinct ones
    Print bad;
    bad.nodes.push_back({{1}, SimilarityType(2, 2, {{0, 0}, {1, 1}}), UINT32_MAX, {}});
    bad.nodes.push_back(
        {{1}, SimilarityType(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}), 0, SimilarityType(2, 2, {{0, 0}, {1, 1}})});
    CHECK_THROWS_AS(structure_from_print(sig, bad), InconsistentPrint);
}

TEST_CASE("random acyclic samples")
{
    Signature sig({{"U", 1}, {"E", 2}, {"T", 3}});
    auto a = random_acyclic(sig, 5, 99), b = random_acyclic(sig, 5, 99);
    CHECK(serialize(a.C) == serialize(b.C));
    Rng rng(1);
    for (int it = 0; it < 1000; ++it) {
        AcyclicSample s = random_acyclic(sig, rng.range(1, 6), rng);
        CHECK(validate_join_tree(s.C, s.J).ok);
        CHECK(gyo_join_tree(s.C).has_value());
    }
}

TEST_CASE("print extraction round trip")
{
    Signature sig({{"E", 2}, {"T", 3}});
    Rng rng(12);
    for (int it = 0; it < 200; ++it) {
        AcyclicSample s = random_acyclic(sig, rng.range(1, 5), rng);
        ColoredMultigraph g = jtrep(s.C, s.J);
        Print p = extract_print(g, sig, s.J);
        PrintStructure ps = structure_from_print(sig, p);
        CHECK(ps.C.tup().size() == s.C.tup().size());
        CHECK(serialize(ps.C).size() > 0);
    }
}
