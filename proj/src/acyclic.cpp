#include "rcr/acyclic.hpp"

#include "rcr/representations.hpp"

#include <algorithm>
#include <sstream>

namespace rcr {

using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

JoinTree::JoinTree(size_t n, vector<std::pair<uint32_t, uint32_t>> edges) : edges_(std::move(edges)), adj_(n)
{
    if (n == 0)
        throw Error("join tree has no nodes");
    if (edges_.size() != n - 1)
        throw Error("join tree needs " + std::to_string(n - 1) + " edges, got " + std::to_string(edges_.size()));
    for (auto &[u, v] : edges_) {
        if (u >= n || v >= n || u == v)
            throw Error("join tree edge out of range");
        if (u > v)
            std::swap(u, v);
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto &l : adj_)
        std::sort(l.begin(), l.end());
    vector<uint32_t> parent, order;
    orient(0, parent, order);
    if (order.size() != n)
        throw Error("join tree is not connected");
}

void JoinTree::orient(uint32_t root, vector<uint32_t> &parent, vector<uint32_t> &order) const
{
    parent.assign(adj_.size(), UINT32_MAX);
    order.clear();
    vector<char> seen(adj_.size(), 0);
    order.push_back(root);
    seen[root] = 1;
    for (size_t h = 0; h < order.size(); ++h)
        for (uint32_t w : adj_[order[h]])
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[h];
                order.push_back(w);
            }
}

std::optional<JoinTree> gyo_join_tree(const Structure &C)
{
    const auto &tup = C.tup();
    size_t n = tup.size();
    vector<Tuple> sets(n);
    for (size_t i = 0; i < n; ++i) {
        sets[i] = tup[i].vec;
        std::sort(sets[i].begin(), sets[i].end());
        sets[i].erase(std::unique(sets[i].begin(), sets[i].end()), sets[i].end());
    }
    vector<uint32_t> count(C.universe_size(), 0);
    for (const Tuple &s : sets)
        for (Element e : s)
            ++count[e];
    vector<char> alive(n, 1);
    vector<std::pair<uint32_t, uint32_t>> edges;
    for (size_t remaining = n; remaining > 1; --remaining) {
        bool found = false;
        for (uint32_t e = 0; e < n && !found; ++e) {
            if (!alive[e])
                continue;
            Tuple shared;
            for (Element x : sets[e])
                if (count[x] > 1)
                    shared.push_back(x);
            for (uint32_t f = 0; f < n; ++f) {
                if (f == e || !alive[f])
                    continue;
                if (!std::includes(sets[f].begin(), sets[f].end(), shared.begin(), shared.end()))
                    continue;
                edges.emplace_back(e, f);
                alive[e] = 0;
                for (Element x : sets[e])
                    --count[x];
                found = true;
                break;
            }
        }
        if (!found)
            return std::nullopt;
    }
    return JoinTree(n, std::move(edges));
}

JoinTreeCheck validate_join_tree(const Structure &C, const JoinTree &J)
{
    if (J.size() != C.tup().size())
        throw Error("join tree has " + std::to_string(J.size()) + " nodes, structure has " +
                    std::to_string(C.tup().size()) + " tuples");
    vector<uint32_t> mark(J.size(), UINT32_MAX);
    for (Element e = 0; e < C.universe_size(); ++e) {
        const auto &occ = C.occurrences(e);
        if (occ.empty())
            continue;
        for (uint32_t t : occ)
            mark[t] = e;
        vector<uint32_t> stack{occ[0]};
        vector<char> seen(J.size(), 0);
        seen[occ[0]] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            uint32_t v = stack.back();
            stack.pop_back();
            for (uint32_t w : J.neighbors(v))
                if (mark[w] == e && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != occ.size())
            return {false, e};
    }
    return {true, std::nullopt};
}

namespace {

uint32_t parse_ref(const string &s, size_t &pos, const Structure &C, int line)
{
    auto fail = [&](const string &m) { throw Error("join tree line " + std::to_string(line) + ": " + m); };
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    };
    skip();
    if (pos >= s.size() || s[pos] != '(')
        fail("expected '('");
    size_t comma = s.find(',', pos), close = s.find(')', pos);
    if (comma == string::npos || close == string::npos || comma > close)
        fail("expected (rel,idx)");
    auto trim = [](string x) {
        x.erase(0, x.find_first_not_of(" \t"));
        x.erase(x.find_last_not_of(" \t") + 1);
        return x;
    };
    string rel = trim(s.substr(pos + 1, comma - pos - 1));
    string idx = trim(s.substr(comma + 1, close - comma - 1));
    pos = close + 1;
    auto r = C.signature().find(rel);
    if (!r)
        fail("unknown symbol " + rel);
    size_t i = 0;
    try {
        i = std::stoul(idx);
    } catch (const std::logic_error &) {
        fail("bad index " + idx);
    }
    if (i >= C.relation(*r).size())
        fail("index out of range for " + rel);
    return C.tup_index(TupleRef{*r, static_cast<uint32_t>(i)});
}

} // namespace

JoinTree parse_join_tree(const string &text, const Structure &C)
{
    std::istringstream in(text);
    string line;
    int lineno = 0;
    vector<std::pair<uint32_t, uint32_t>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        if (line.find_first_not_of(" \t\r") == string::npos)
            continue;
        size_t pos = line.find("edge:");
        if (pos == string::npos)
            throw Error("join tree line " + std::to_string(lineno) + ": expected 'edge:'");
        pos += 5;
        uint32_t a = parse_ref(line, pos, C, lineno);
        size_t dash = line.find("--", pos);
        if (dash == string::npos)
            throw Error("join tree line " + std::to_string(lineno) + ": expected '--'");
        pos = dash + 2;
        uint32_t b = parse_ref(line, pos, C, lineno);
        edges.emplace_back(a, b);
    }
    return JoinTree(C.tup().size(), std::move(edges));
}

string serialize_join_tree(const JoinTree &J, const Structure &C)
{
    std::ostringstream out;
    auto ref = [&](uint32_t t) {
        TupleRef r = C.tup()[t].first;
        return "(" + C.signature()[r.relation].name + "," + std::to_string(r.index) + ")";
    };
    for (auto [u, v] : J.edges())
        out << "edge: " << ref(u) << " -- " << ref(v) << "\n";
    return out.str();
}

string join_tree_dot(const JoinTree &J, const Structure &C)
{
    std::ostringstream out;
    out << "graph J {\n";
    for (uint32_t v = 0; v < J.size(); ++v) {
        const TupEntry &t = C.tup()[v];
        out << "  n" << v << " [label=\"" << C.signature()[t.first.relation].name << C.tuple_str(t.vec) << "\"];\n";
    }
    for (auto [u, v] : J.edges())
        out << "  n" << u << " -- n" << v << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

bool is_equivalence(const SimilarityType &t)
{
    if (t.left_arity() != t.right_arity())
        return false;
    for (int i = 0; i < t.left_arity(); ++i)
        if (!t.contains(i, i))
            return false;
    for (auto [i, j] : t.pairs())
        if (!t.contains(j, i))
            return false;
    return t.is_transitive();
}

int print_arity(const Signature &sig, const AtomicType &rho)
{
    if (rho.empty())
        throw InconsistentPrint("print node with empty atomic type");
    int k = sig.arity(rho[0]);
    for (SymbolId r : rho)
        if (sig.arity(r) != k)
            throw InconsistentPrint("print node atomic type mixes arities");
    return k;
}

} // namespace

PrintStructure structure_from_print(const Signature &sig, const Print &P)
{
    if (P.nodes.empty())
        throw InconsistentPrint("empty print");
    size_t n = P.nodes.size();
    vector<Tuple> t(n);
    vector<string> names;
    auto fresh = [&](size_t depth) {
        names.push_back("b" + std::to_string(depth) + "_" + std::to_string(names.size()));
        return static_cast<Element>(names.size() - 1);
    };
    vector<size_t> depth(n, 0);
    for (size_t v = 0; v < n; ++v) {
        const Print::Node &nd = P.nodes[v];
        int k = print_arity(sig, nd.rho);
        if (nd.tau.left_arity() != k || !is_equivalence(nd.tau))
            throw InconsistentPrint("self type of node " + std::to_string(v) + " is not an equivalence on its positions");
        vector<Element> w(k, UINT32_MAX);
        if (v == 0) {
            if (nd.parent != UINT32_MAX)
                throw InconsistentPrint("root has a parent");
        } else {
            if (nd.parent >= v)
                throw InconsistentPrint("parent must precede child");
            depth[v] = depth[nd.parent] + 1;
            const Tuple &u = t[nd.parent];
            if (nd.up.left_arity() != static_cast<int>(u.size()) || nd.up.right_arity() != k)
                throw InconsistentPrint("edge type arity mismatch at node " + std::to_string(v));
            for (auto [i, j] : nd.up.pairs()) {
                if (w[j] != UINT32_MAX && w[j] != u[i])
                    throw InconsistentPrint("edge type forces unequal parent entries together at node " +
                                            std::to_string(v));
                w[j] = u[i];
            }
        }
        vector<int> cls = position_classes(nd.tau);
        for (int j = 0; j < k; ++j) {
            int c = cls[j];
            if (w[j] == UINT32_MAX)
                continue;
            if (w[c] == UINT32_MAX)
                w[c] = w[j];
            else if (w[c] != w[j])
                throw InconsistentPrint("self type joins positions with distinct parent values at node " +
                                        std::to_string(v));
        }
        for (int j = 0; j < k; ++j) {
            int c = cls[j];
            if (w[c] == UINT32_MAX)
                w[c] = fresh(depth[v]);
            w[j] = w[c];
        }
        if (stp(w) != nd.tau)
            throw InconsistentPrint("self type not realized at node " + std::to_string(v));
        if (v > 0 && stp(t[nd.parent], w) != nd.up)
            throw InconsistentPrint("edge type not realized at node " + std::to_string(v));
        t[v] = std::move(w);
    }
    vector<vector<Tuple>> rels(sig.size());
    std::unordered_map<Tuple, int, TupleHash> seen;
    for (size_t v = 0; v < n; ++v) {
        if (!seen.emplace(t[v], 0).second)
            throw InconsistentPrint("two print nodes realize the same tuple");
        for (SymbolId r : P.nodes[v].rho)
            rels[r].push_back(t[v]);
    }
    PrintStructure out{Structure::build(sig, std::move(names), std::move(rels)), {}, {}};
    out.tup_of.resize(n);
    for (size_t v = 0; v < n; ++v)
        out.tup_of[v] = *out.C.tup_index(t[v]);
    vector<std::pair<uint32_t, uint32_t>> edges;
    for (size_t v = 1; v < n; ++v)
        edges.emplace_back(out.tup_of[P.nodes[v].parent], out.tup_of[v]);
    out.J = JoinTree(n, std::move(edges));
    return out;
}

Print extract_print(const ColoredMultigraph &jt, const Signature &sig, const JoinTree &J, uint32_t root)
{
    int m = sig.max_arity();
    vector<uint32_t> parent, order;
    J.orient(root, parent, order);
    vector<uint32_t> pos(J.size());
    for (size_t i = 0; i < order.size(); ++i)
        pos[order[i]] = static_cast<uint32_t>(i);
    // arc lookup
    std::unordered_map<std::uint64_t, std::uint32_t> arc;
    for (const Arc &a : jt.arcs())
        arc[(std::uint64_t(a.from) << 32) | a.to] = a.labels;
    auto decode = [&](NodeId u, NodeId v, int k, int l) {
        vector<SimilarityType::Pair> p;
        auto it = arc.find((std::uint64_t(u) << 32) | v);
        if (it != arc.end())
            for (LabelId x : jt.label_set(it->second))
                p.emplace_back(static_cast<std::uint8_t>(x / m), static_cast<std::uint8_t>(x % m));
        return SimilarityType(k, l, std::move(p));
    };
    Print P;
    vector<int> arity(J.size());
    for (uint32_t v : order) {
        Print::Node nd;
        nd.rho.assign(jt.node_labels(v).begin(), jt.node_labels(v).end());
        arity[v] = print_arity(sig, nd.rho);
        nd.tau = decode(v, v, arity[v], arity[v]);
        if (parent[v] != UINT32_MAX) {
            nd.parent = pos[parent[v]];
            nd.up = decode(parent[v], v, arity[parent[v]], arity[v]);
        }
        P.nodes.push_back(std::move(nd));
    }
    return P;
}

namespace {

// Random set partition of [k] as class representatives (smallest member).
vector<int> random_partition(int k, Rng &rng)
{
    vector<int> cls(k);
    vector<int> reps;
    for (int j = 0; j < k; ++j) {
        if (reps.empty() || rng.coin(0.7)) {
            cls[j] = j;
            reps.push_back(j);
        } else {
            cls[j] = reps[rng.below(reps.size())];
        }
    }
    return cls;
}

SimilarityType partition_type(const vector<int> &cls)
{
    vector<SimilarityType::Pair> p;
    int k = static_cast<int>(cls.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (cls[i] == cls[j])
                p.emplace_back(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j));
    return SimilarityType(k, k, std::move(p));
}

vector<int> representatives(const vector<int> &cls)
{
    vector<int> r;
    for (int j = 0; j < static_cast<int>(cls.size()); ++j)
        if (cls[j] == j)
            r.push_back(j);
    return r;
}

} // namespace

AcyclicSample random_acyclic(const Signature &sig, size_t node_count, Rng &rng)
{
    if (node_count == 0)
        throw Error("random_acyclic: node_count must be >= 1");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Print P;
        vector<vector<int>> classes;
        for (size_t v = 0; v < node_count; ++v) {
            Print::Node nd;
            SymbolId r = static_cast<SymbolId>(rng.below(sig.size()));
            nd.rho.push_back(r);
            for (SymbolId q = 0; q < sig.size(); ++q)
                if (q != r && sig.arity(q) == sig.arity(r) && rng.coin(0.15))
                    nd.rho.push_back(q);
            std::sort(nd.rho.begin(), nd.rho.end());
            int k = sig.arity(r);
            vector<int> cls = random_partition(k, rng);
            nd.tau = partition_type(cls);
            if (v > 0) {
                nd.parent = static_cast<uint32_t>(rng.below(v));
                const vector<int> &pcls = classes[nd.parent];
                vector<int> prep = representatives(pcls), crep = representatives(cls);
                rng.shuffle(prep);
                rng.shuffle(crep);
                size_t max_share = std::min(prep.size(), crep.size());
                size_t share = 1 + rng.below(max_share);
                vector<SimilarityType::Pair> p;
                for (size_t s = 0; s < share; ++s)
                    for (int i = 0; i < static_cast<int>(pcls.size()); ++i)
                        for (int j = 0; j < k; ++j)
                            if (pcls[i] == prep[s] && cls[j] == crep[s])
                                p.emplace_back(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j));
                nd.up = SimilarityType(static_cast<int>(pcls.size()), k, std::move(p));
            }
            classes.push_back(cls);
            P.nodes.push_back(std::move(nd));
        }
        try {
            PrintStructure ps = structure_from_print(sig, P);
            return {std::move(ps.C), std::move(ps.J)};
        } catch (const InconsistentPrint &) {
            continue;
        }
    }
    throw Error("random_acyclic: no consistent print found");
}

AcyclicSample random_acyclic(const Signature &sig, size_t node_count, std::uint64_t seed)
{
    Rng rng(seed);
    return random_acyclic(sig, node_count, rng);
}

} // namespace rcr
