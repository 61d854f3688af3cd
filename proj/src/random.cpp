#include "rcr/random.hpp"

#include <algorithm>

namespace rcr {

using std::size_t;
using std::vector;

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n <= 1)
        return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        std::uint64_t x = next();
        if (x < limit)
            return x % n;
    }
}

namespace {

Structure compact(const Signature &sig, size_t n, vector<vector<Tuple>> rels)
{
    vector<Element> remap(n, UINT32_MAX);
    vector<std::string> names;
    for (auto &rel : rels)
        for (Tuple &t : rel)
            for (Element &e : t) {
                if (remap[e] == UINT32_MAX) {
                    remap[e] = static_cast<Element>(names.size());
                    names.push_back(std::to_string(names.size() + 1));
                }
                e = remap[e];
            }
    return Structure::build(sig, std::move(names), std::move(rels));
}

} // namespace

Structure random_structure(const Signature &sig, const RandomStructureParams &p, Rng &rng)
{
    size_t n = std::max<size_t>(p.elements, 1);
    vector<vector<Tuple>> rels(sig.size());
    vector<std::unordered_map<Tuple, int, TupleHash>> seen(sig.size());
    size_t placed = 0, attempts = 0;
    while (placed < p.tuples && attempts < 50 * p.tuples + 100) {
        ++attempts;
        SymbolId r = static_cast<SymbolId>(rng.below(sig.size()));
        if (rels[r].size() >= p.max_per_relation)
            continue;
        Tuple t;
        for (int i = 0; i < sig.arity(r); ++i) {
            if (i > 0 && rng.coin(p.repeat_bias))
                t.push_back(t[rng.below(i)]);
            else
                t.push_back(static_cast<Element>(rng.below(n)));
        }
        if (!seen[r].emplace(t, 0).second)
            continue;
        rels[r].push_back(std::move(t));
        ++placed;
    }
    if (placed == 0) {
        SymbolId r = 0;
        rels[r].push_back(Tuple(sig.arity(r), 0));
    }
    return compact(sig, n, std::move(rels));
}

Signature random_signature(Rng &rng, int max_arity, int max_symbols)
{
    int count = static_cast<int>(rng.range(1, max_symbols));
    vector<Symbol> syms;
    for (int i = 0; i < count; ++i)
        syms.push_back({std::string(1, static_cast<char>('A' + i)), static_cast<int>(rng.range(1, max_arity))});
    if (std::none_of(syms.begin(), syms.end(), [&](const Symbol &s) { return s.arity == max_arity; }))
        syms.back().arity = max_arity;
    return Signature(syms);
}

Structure random_same_size(const Structure &A, size_t elements, Rng &rng)
{
    const Signature &sig = A.signature();
    size_t n = std::max<size_t>(elements, 1);
    for (int tries = 0; tries < 1000; ++tries) {
        vector<vector<Tuple>> rels(sig.size());
        bool ok = true;
        for (SymbolId r = 0; r < sig.size() && ok; ++r) {
            std::unordered_map<Tuple, int, TupleHash> seen;
            size_t guard = 0;
            while (rels[r].size() < A.relation(r).size()) {
                if (++guard > 1000) {
                    ok = false;
                    break;
                }
                Tuple t;
                for (int i = 0; i < sig.arity(r); ++i)
                    t.push_back(static_cast<Element>(rng.below(n)));
                if (seen.emplace(t, 0).second)
                    rels[r].push_back(std::move(t));
            }
        }
        if (ok)
            return compact(sig, n, std::move(rels));
        ++n;
    }
    throw Error("random_same_size: could not place tuples");
}

Structure random_isomorphic_copy(const Structure &A, Rng &rng)
{
    vector<Element> perm(A.universe_size());
    for (Element e = 0; e < perm.size(); ++e)
        perm[e] = e;
    rng.shuffle(perm);
    return permute(A, perm);
}

Structure graph_structure(size_t n, const vector<std::pair<Element, Element>> &edges)
{
    Signature sig({{"E", 2}, {"U", 1}});
    vector<vector<Tuple>> rels(2);
    for (auto [u, v] : edges) {
        rels[0].push_back({u, v});
        rels[0].push_back({v, u});
    }
    vector<std::string> names;
    for (size_t v = 0; v < n; ++v) {
        rels[1].push_back({static_cast<Element>(v)});
        names.push_back(std::to_string(v));
    }
    return Structure::build(sig, std::move(names), std::move(rels));
}

} // namespace rcr
