#include "rcr/representations.hpp"

#include "rcr/acyclic.hpp"

#include <algorithm>

namespace rcr {

using std::size_t;
using std::string;
using std::vector;

void init_sigma_star(ColoredMultigraph &g, const Signature &sig)
{
    for (const Symbol &s : sig.symbols())
        g.unary.intern("U_" + s.name);
    int m = sig.max_arity();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g.edge.intern(std::to_string(i + 1) + std::to_string(j + 1));
}

namespace {

vector<LabelId> stp_labels(const Signature &sig, std::span<const Element> a, std::span<const Element> b)
{
    vector<LabelId> out;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (a[i] == b[j])
                out.push_back(edge_label(sig, static_cast<int>(i), static_cast<int>(j)));
    std::sort(out.begin(), out.end());
    return out;
}

void label_tup_node(ColoredMultigraph &g, NodeId v, const TupEntry &t)
{
    for (SymbolId r : t.atp)
        g.add_unary(v, r);
}

} // namespace

ColoredMultigraph grep(const Structure &A)
{
    ColoredMultigraph g;
    const Signature &sig = A.signature();
    init_sigma_star(g, sig);
    const auto &tup = A.tup();
    for (const TupEntry &t : tup)
        label_tup_node(g, g.add_node("w" + A.tuple_str(t.vec)), t);
    vector<std::uint32_t> mark(tup.size(), UINT32_MAX);
    for (std::uint32_t a = 0; a < tup.size(); ++a)
        for (Element e : tup[a].vec)
            for (std::uint32_t b : A.occurrences(e)) {
                if (mark[b] == a)
                    continue;
                mark[b] = a;
                g.add_arc(a, b, stp_labels(sig, tup[a].vec, tup[b].vec));
            }
    g.finalize();
    return g;
}

vector<Slice> slices(std::span<const Element> a)
{
    Tuple set(a.begin(), a.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    size_t k = set.size();
    vector<Slice> out;
    Slice cur;
    vector<char> used(k, 0);
    // depth-first over selections of length len; lexicographic because set is sorted
    auto rec = [&](auto &&self, size_t len) -> void {
        if (cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (size_t i = 0; i < k; ++i) {
            if (used[i])
                continue;
            used[i] = 1;
            cur.push_back(set[i]);
            self(self, len);
            cur.pop_back();
            used[i] = 0;
        }
    };
    for (size_t len = 1; len <= k; ++len)
        rec(rec, len);
    return out;
}

size_t slice_count_bound(int k)
{
    size_t total = 0, term = 1;
    for (int l = 1; l <= k; ++l) {
        term *= static_cast<size_t>(k - l + 1);
        total += term;
    }
    return total;
}

bool is_slice_of(std::span<const Element> s, std::span<const Element> a)
{
    if (s.empty())
        return false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (std::find(a.begin(), a.end(), s[i]) == a.end())
            return false;
        for (size_t j = 0; j < i; ++j)
            if (s[j] == s[i])
                return false;
    }
    return true;
}

vector<std::uint32_t> slice_inverse(std::span<const Element> s, const Structure &A)
{
    vector<std::uint32_t> out;
    if (s.empty())
        return out;
    for (std::uint32_t a : A.occurrences(s[0]))
        if (is_slice_of(s, A.tup()[a].vec))
            out.push_back(a);
    return out;
}

Slice map_slice(std::span<const Element> a, std::span<const Element> b, std::span<const Element> s)
{
    Slice out;
    for (Element x : s) {
        auto it = std::find(a.begin(), a.end(), x);
        if (it == a.end())
            throw Error("map_slice: not a slice of a");
        out.push_back(b[it - a.begin()]);
    }
    return out;
}

std::optional<vector<std::pair<Slice, Slice>>> slice_bijection(std::span<const Element> a,
                                                              std::span<const Element> b)
{
    if (stp(a) != stp(b))
        return std::nullopt;
    vector<std::pair<Slice, Slice>> out;
    for (Slice &s : slices(a)) {
        Slice t = map_slice(a, b, s);
        out.emplace_back(std::move(s), std::move(t));
    }
    return out;
}

SliceGraph vgrep(const Structure &A, bool node_names)
{
    SliceGraph sg;
    ColoredMultigraph &g = sg.graph;
    const Signature &sig = A.signature();
    init_sigma_star(g, sig);
    const auto &tup = A.tup();
    sg.w_count = tup.size();
    for (const TupEntry &t : tup)
        label_tup_node(g, node_names ? g.add_node("w" + A.tuple_str(t.vec)) : g.add_node(), t);

    std::unordered_map<Slice, NodeId, TupleHash> index;
    index.reserve(tup.size() * 4);
    vector<LabelId> fwd, bwd;
    for (std::uint32_t a = 0; a < tup.size(); ++a) {
        const Tuple &vec = tup[a].vec;
        for (const Slice &s : slices(vec)) {
            auto it = index.find(s);
            NodeId v;
            if (it == index.end()) {
                v = node_names ? g.add_node("v" + A.tuple_str(s)) : g.add_node();
                index.emplace(s, v);
                sg.slices.push_back(s);
            } else {
                v = it->second;
            }
            fwd.clear();
            bwd.clear();
            for (size_t i = 0; i < vec.size(); ++i)
                for (size_t j = 0; j < s.size(); ++j)
                    if (vec[i] == s[j]) {
                        fwd.push_back(edge_label(sig, static_cast<int>(i), static_cast<int>(j)));
                        bwd.push_back(edge_label(sig, static_cast<int>(j), static_cast<int>(i)));
                    }
            std::sort(bwd.begin(), bwd.end());
            g.add_arc(a, v, fwd);
            g.add_arc(v, a, bwd);
        }
    }
    g.finalize();
    return sg;
}

ColoredMultigraph incidence(const Structure &A)
{
    ColoredMultigraph g;
    const Signature &sig = A.signature();
    for (const Symbol &s : sig.symbols())
        g.unary.intern("U_" + s.name);
    LabelId E = g.edge.intern("E");
    for (Element e = 0; e < A.universe_size(); ++e)
        g.add_node(A.name(e));
    for (SymbolId r = 0; r < sig.size(); ++r)
        for (const Tuple &t : A.relation(r)) {
            NodeId v = g.add_node(sig[r].name + A.tuple_str(t));
            g.add_unary(v, r);
            for (Element e : t)
                g.add_edge(e, v, E);
        }
    g.finalize();
    return g;
}

ColoredMultigraph enriched_gaifman(const Structure &A)
{
    ColoredMultigraph g;
    const Signature &sig = A.signature();
    for (const Symbol &s : sig.symbols())
        for (int i = 0; i < s.arity; ++i)
            for (int j = 0; j < s.arity; ++j)
                if (i != j)
                    g.edge.intern(s.name + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    for (Element e = 0; e < A.universe_size(); ++e)
        g.add_node(A.name(e));
    for (SymbolId r = 0; r < sig.size(); ++r) {
        const string &n = sig[r].name;
        for (const Tuple &t : A.relation(r))
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = 0; j < t.size(); ++j)
                    if (i != j)
                        g.add_edge(t[i], t[j],
                                   *g.edge.find(n + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"));
    }
    g.finalize();
    return g;
}

ColoredMultigraph enriched_incidence(const Structure &A)
{
    ColoredMultigraph g;
    const Signature &sig = A.signature();
    for (int i = 0; i < sig.max_arity(); ++i)
        g.edge.intern(std::to_string(i + 1));
    for (Element e = 0; e < A.universe_size(); ++e)
        g.add_node(A.name(e));
    for (SymbolId r = 0; r < sig.size(); ++r)
        for (const Tuple &t : A.relation(r)) {
            NodeId w = g.add_node(sig[r].name + A.tuple_str(t));
            for (size_t i = 0; i < t.size(); ++i)
                g.add_edge(t[i], w, static_cast<LabelId>(i));
        }
    g.finalize();
    return g;
}

ColoredMultigraph jtrep(const Structure &C, const JoinTree &J)
{
    auto check = validate_join_tree(C, J);
    if (!check.ok)
        throw Error("invalid join tree: element " + C.name(*check.violating) + " is disconnected");
    ColoredMultigraph g;
    const Signature &sig = C.signature();
    init_sigma_star(g, sig);
    const auto &tup = C.tup();
    for (const TupEntry &t : tup) {
        NodeId v = g.add_node("v" + C.tuple_str(t.vec));
        label_tup_node(g, v, t);
        g.add_arc(v, v, stp_labels(sig, t.vec, t.vec));
    }
    for (auto [b, c] : J.edges()) {
        g.add_arc(b, c, stp_labels(sig, tup[b].vec, tup[c].vec));
        g.add_arc(c, b, stp_labels(sig, tup[c].vec, tup[b].vec));
    }
    g.finalize();
    return g;
}

} // namespace rcr
