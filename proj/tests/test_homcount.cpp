#include "doctest.h"
#include "support.hpp"

#include "rcr/homcount.hpp"
#include "rcr/representations.hpp"

using namespace rcr;

TEST_CASE("running example hom counts")
{
    Structure A = load_fixture("A1.struct"), B = load_fixture("B1.struct");
    JoinTree J = parse_join_tree(read_file(fixture("A1.jt")), A);
    CHECK(hom_bruteforce(A, B) == 0);
    CHECK(hom_acyclic(A, J, B) == 0);
    Count aa = hom_bruteforce(A, A);
    CHECK(aa >= 1);
    CHECK(hom_acyclic(A, J, A) == aa);
    CHECK(hom_multigraph(jtrep(A, J), grep(A)) == aa);
    CHECK(hom_multigraph(jtrep(A, J), grep(B)) == 0);
}

TEST_CASE("single unary tuple counts U")
{
    Structure C = parse_structure("signature: U/1, E/2\nU(x)\n");
    Structure A = parse_structure("signature: U/1, E/2\nU(a)\nU(b)\nE(a,c)\nU(d)\n");
    CHECK(hom_bruteforce(C, A) == 3);
    CHECK(hom_acyclic(C, JoinTree(1, {}), A) == 3);
    ColoredMultigraph t = jtrep(C, JoinTree(1, {}));
    CHECK(hom_multigraph(t, grep(A)) == 3);
}

TEST_CASE("brute force guard")
{
    Signature sig({{"E", 2}});
    std::vector<std::string> names;
    std::vector<Tuple> es;
    for (Element i = 0; i < 60; ++i) {
        names.push_back("x" + std::to_string(i));
        es.push_back({i, (i + 1) % 60});
    }
    Structure big = Structure::build(sig, names, {es});
    CHECK_THROWS_AS(hom_bruteforce(big, big), TooLarge);
}

TEST_CASE("DP equals brute force on random acyclic sources")
{
    Rng rng(77);
    for (int it = 0; it < 300; ++it) {
        Signature sig = random_signature(rng, 3, 3);
        AcyclicSample s = random_acyclic(sig, rng.range(1, 4), rng);
        Structure A = random_structure(sig, {5, static_cast<std::size_t>(rng.range(1, 8)), SIZE_MAX, 0.2}, rng);
        Count b = hom_bruteforce(s.C, A);
        CHECK(hom_acyclic(s.C, s.J, A) == b);
        CHECK(hom_multigraph(jtrep(s.C, s.J), grep(A)) == b);
        // identity
        CHECK(hom_acyclic(s.C, s.J, s.C) >= 1);
    }
}

TEST_CASE("counts are invariant under renaming")
{
    Rng rng(5);
    for (int it = 0; it < 50; ++it) {
        Signature sig = random_signature(rng, 2, 2);
        AcyclicSample s = random_acyclic(sig, 3, rng);
        Structure A = random_structure(sig, {5, 7}, rng);
        CHECK(hom_bruteforce(s.C, A) == hom_bruteforce(random_isomorphic_copy(s.C, rng), random_isomorphic_copy(A, rng)));
    }
}

TEST_CASE("multigraph source must be a forest")
{
    Structure T = load_fixture("triangle.struct");
    CHECK_THROWS_AS(hom_multigraph(grep(T), grep(T)), Error);
}
