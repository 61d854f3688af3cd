#include "rcr/homcount.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rcr {

using std::size_t;
using std::uint32_t;
using std::vector;

Count hom_bruteforce(const Structure &C, const Structure &A, double max_bits)
{
    if (!(C.signature() == A.signature()))
        throw Error("signature mismatch");
    size_t nc = C.universe_size(), na = A.universe_size();
    if (nc == 0)
        return 1;
    if (na == 0)
        return 0;
    if (static_cast<double>(nc) * std::log2(static_cast<double>(na)) > max_bits)
        throw TooLarge("brute force guard: |V(C)|*log2|V(A)| = " +
                       std::to_string(static_cast<double>(nc) * std::log2(static_cast<double>(na))) + " > " +
                       std::to_string(max_bits));
    // check each fact as soon as its last element is assigned
    vector<vector<std::pair<SymbolId, const Tuple *>>> due(nc);
    for (SymbolId r = 0; r < C.signature().size(); ++r)
        for (const Tuple &t : C.relation(r))
            due[*std::max_element(t.begin(), t.end())].emplace_back(r, &t);
    vector<Element> h(nc);
    Tuple img;
    Count total = 0;
    auto rec = [&](auto &&self, Element x) -> void {
        if (x == nc) {
            ++total;
            return;
        }
        for (Element y = 0; y < na; ++y) {
            h[x] = y;
            bool ok = true;
            for (auto &[r, t] : due[x]) {
                img.clear();
                for (Element e : *t)
                    img.push_back(h[e]);
                if (!A.holds(r, img)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                self(self, x + 1);
        }
    };
    rec(rec, 0);
    return total;
}

Count hom_acyclic(const Structure &C, const JoinTree &J, const Structure &A)
{
    if (!(C.signature() == A.signature()))
        throw Error("signature mismatch");
    auto check = validate_join_tree(C, J);
    if (!check.ok)
        throw Error("invalid join tree: element " + C.name(*check.violating) + " is disconnected");
    const auto &ct = C.tup();
    const auto &at = A.tup();
    size_t n = ct.size();
    if (n == 0)
        return 1;

    // candidate images per node: Tup(A) members with a larger atp and a larger self type
    vector<vector<uint32_t>> cand(n);
    for (size_t c = 0; c < n; ++c) {
        SimilarityType self = stp(ct[c].vec);
        for (uint32_t a = 0; a < at.size(); ++a) {
            if (at[a].vec.size() != ct[c].vec.size())
                continue;
            if (!std::includes(at[a].atp.begin(), at[a].atp.end(), ct[c].atp.begin(), ct[c].atp.end()))
                continue;
            if (!stp(at[a].vec).contains_all(self))
                continue;
            cand[c].push_back(a);
        }
    }

    vector<uint32_t> parent, order;
    J.orient(0, parent, order);
    vector<vector<Count>> table(n);
    for (size_t c = 0; c < n; ++c)
        table[c].assign(cand[c].size(), Count(1));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        uint32_t d = *it, p = parent[d];
        if (p == UINT32_MAX)
            continue;
        // positions (in p, in d) of shared elements, one pair per element
        vector<std::pair<int, int>> shared;
        const Tuple &pv = ct[p].vec, &dv = ct[d].vec;
        for (size_t j = 0; j < dv.size(); ++j) {
            auto f = std::find(pv.begin(), pv.end(), dv[j]);
            if (f == pv.end())
                continue;
            bool dup = false;
            for (auto &[pi, dj] : shared)
                if (dv[dj] == dv[j])
                    dup = true;
            if (!dup)
                shared.emplace_back(static_cast<int>(f - pv.begin()), static_cast<int>(j));
        }
        std::map<Tuple, Count> sums;
        for (size_t k = 0; k < cand[d].size(); ++k) {
            if (table[d][k] == 0)
                continue;
            Tuple key;
            for (auto &[pi, dj] : shared)
                key.push_back(at[cand[d][k]].vec[dj]);
            sums[key] += table[d][k];
        }
        for (size_t k = 0; k < cand[p].size(); ++k) {
            if (table[p][k] == 0)
                continue;
            Tuple key;
            for (auto &[pi, dj] : shared)
                key.push_back(at[cand[p][k]].vec[pi]);
            auto f = sums.find(key);
            if (f == sums.end())
                table[p][k] = 0;
            else
                table[p][k] *= f->second;
        }
    }
    Count total = 0;
    for (const Count &x : table[order[0]])
        total += x;
    return total;
}

Count hom_multigraph(const ColoredMultigraph &T, const ColoredMultigraph &G)
{
    if (!(T.unary == G.unary) || !(T.edge == G.edge))
        throw Error("label namespace mismatch");
    size_t nt = T.node_count(), ng = G.node_count();
    auto tadj = gaifman(T);
    {
        size_t edges = 0;
        for (auto &l : tadj)
            edges += l.size();
        edges /= 2;
        // a forest has |V| - components edges
        vector<char> seen(nt, 0);
        size_t comps = 0;
        for (size_t s = 0; s < nt; ++s) {
            if (seen[s])
                continue;
            ++comps;
            vector<NodeId> st{static_cast<NodeId>(s)};
            seen[s] = 1;
            while (!st.empty()) {
                NodeId v = st.back();
                st.pop_back();
                for (NodeId w : tadj[v])
                    if (!seen[w]) {
                        seen[w] = 1;
                        st.push_back(w);
                    }
            }
        }
        if (edges + comps != nt)
            throw Error("hom_multigraph: source is not a multitree");
    }
    auto arc_map = [](const ColoredMultigraph &X) {
        std::unordered_map<std::uint64_t, uint32_t> m;
        for (const Arc &a : X.arcs())
            m[(std::uint64_t(a.from) << 32) | a.to] = a.labels;
        return m;
    };
    auto tarcs = arc_map(T), garcs = arc_map(G);
    auto labels = [](const ColoredMultigraph &X, const std::unordered_map<std::uint64_t, uint32_t> &m, NodeId u,
                     NodeId v) -> const vector<LabelId> * {
        auto it = m.find((std::uint64_t(u) << 32) | v);
        return it == m.end() ? nullptr : &X.label_set(it->second);
    };
    auto covers = [](const vector<LabelId> *have, const vector<LabelId> *need) {
        if (!need || need->empty())
            return true;
        if (!have)
            return false;
        return std::includes(have->begin(), have->end(), need->begin(), need->end());
    };
    auto gadj = gaifman(G);

    vector<vector<char>> ok(nt, vector<char>(ng, 0));
    for (NodeId t = 0; t < nt; ++t)
        for (NodeId g = 0; g < ng; ++g) {
            const auto &need = T.node_labels(t), &have = G.node_labels(g);
            if (std::includes(have.begin(), have.end(), need.begin(), need.end()) &&
                covers(labels(G, garcs, g, g), labels(T, tarcs, t, t)))
                ok[t][g] = 1;
        }

    vector<char> seen(nt, 0);
    Count total = 1;
    for (NodeId root = 0; root < nt; ++root) {
        if (seen[root])
            continue;
        vector<NodeId> order{root}, parent(nt, UINT32_MAX);
        seen[root] = 1;
        for (size_t h = 0; h < order.size(); ++h)
            for (NodeId w : tadj[order[h]])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = order[h];
                    order.push_back(w);
                }
        std::map<NodeId, vector<Count>> f;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeId t = *it;
            vector<Count> ft(ng);
            for (NodeId g = 0; g < ng; ++g)
                ft[g] = ok[t][g] ? 1 : 0;
            for (NodeId c : tadj[t]) {
                if (parent[c] != t)
                    continue;
                const vector<Count> &fc = f[c];
                const auto *down = labels(T, tarcs, t, c), *up = labels(T, tarcs, c, t);
                for (NodeId g = 0; g < ng; ++g) {
                    if (ft[g] == 0)
                        continue;
                    Count s = 0;
                    auto try_image = [&](NodeId g2) {
                        if (fc[g2] != 0 && covers(labels(G, garcs, g, g2), down) &&
                            covers(labels(G, garcs, g2, g), up))
                            s += fc[g2];
                    };
                    try_image(g);
                    for (NodeId g2 : gadj[g])
                        try_image(g2);
                    ft[g] *= s;
                }
                f.erase(c);
            }
            f[t] = std::move(ft);
        }
        Count comp = 0;
        for (const Count &x : f[root])
            comp += x;
        total *= comp;
    }
    return total;
}

} // namespace rcr
