#include "rcr/core.hpp"

#include <algorithm>
#include <set>

namespace rcr {

using std::size_t;
using std::string;
using std::vector;

size_t TupleHash::operator()(const Tuple &t) const noexcept
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ t.size();
    for (Element e : t) {
        h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<size_t>(h ^ (h >> 29));
}

Signature::Signature(vector<Symbol> symbols) : symbols_(std::move(symbols))
{
    if (symbols_.empty())
        throw Error("signature is empty");
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].arity < 1)
            throw Error("symbol " + symbols_[i].name + " has arity < 1");
        if (symbols_[i].arity > 255)
            throw Error("symbol " + symbols_[i].name + " has arity > 255");
        for (size_t j = 0; j < i; ++j)
            if (symbols_[j].name == symbols_[i].name)
                throw Error("duplicate symbol " + symbols_[i].name);
        max_arity_ = std::max(max_arity_, symbols_[i].arity);
    }
}

std::optional<SymbolId> Signature::find(const string &name) const
{
    for (size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return static_cast<SymbolId>(i);
    return std::nullopt;
}

SimilarityType::SimilarityType(int k, int l, vector<Pair> pairs)
    : k_(static_cast<std::uint8_t>(k)), l_(static_cast<std::uint8_t>(l)), pairs_(std::move(pairs))
{
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool SimilarityType::contains(int i, int j) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(),
                              Pair{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
}

bool SimilarityType::contains_all(const SimilarityType &o) const
{
    return std::includes(pairs_.begin(), pairs_.end(), o.pairs_.begin(), o.pairs_.end());
}

bool SimilarityType::is_transitive() const
{
    // (i,j), (i2,j), (i,j2) in the type force (i2,j2)
    for (auto [i, j] : pairs_)
        for (auto [i2, jj] : pairs_) {
            if (jj != j)
                continue;
            for (auto [ii, j2] : pairs_)
                if (ii == i && !contains(i2, j2))
                    return false;
        }
    return true;
}

SimilarityType SimilarityType::transposed() const
{
    vector<Pair> p;
    p.reserve(pairs_.size());
    for (auto [i, j] : pairs_)
        p.emplace_back(j, i);
    return SimilarityType(l_, k_, std::move(p));
}

void SimilarityType::encode(string &out) const
{
    out.push_back(static_cast<char>(k_));
    out.push_back(static_cast<char>(l_));
    out.push_back(static_cast<char>(pairs_.size()));
    out.push_back(static_cast<char>(pairs_.size() >> 8));
    for (auto [i, j] : pairs_) {
        out.push_back(static_cast<char>(i));
        out.push_back(static_cast<char>(j));
    }
}

string SimilarityType::encode() const
{
    string s;
    encode(s);
    return s;
}

string SimilarityType::str() const
{
    string s = "{";
    for (size_t n = 0; n < pairs_.size(); ++n) {
        if (n)
            s += ",";
        s += "(" + std::to_string(pairs_[n].first + 1) + "," + std::to_string(pairs_[n].second + 1) + ")";
    }
    return s + "}";
}

SimilarityType stp(std::span<const Element> a, std::span<const Element> b)
{
    vector<SimilarityType::Pair> p;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (a[i] == b[j])
                p.emplace_back(static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j));
    return SimilarityType(static_cast<int>(a.size()), static_cast<int>(b.size()), std::move(p));
}

vector<int> position_classes(const SimilarityType &self)
{
    vector<int> cls(self.left_arity());
    for (int i = 0; i < self.left_arity(); ++i)
        cls[i] = i;
    for (auto [i, j] : self.pairs())
        if (j < cls[i])
            cls[i] = j;
    return cls;
}

Structure Structure::build(Signature sig, vector<string> names, vector<vector<Tuple>> relations,
                           bool pad_universe)
{
    if (relations.size() != sig.size())
        throw Error("relation count does not match signature");
    Structure A;
    for (size_t e = 0; e < names.size(); ++e)
        if (!A.name_index_.emplace(names[e], static_cast<Element>(e)).second)
            throw Error("duplicate element name " + names[e]);
    vector<char> covered(names.size(), 0);
    for (size_t r = 0; r < relations.size(); ++r) {
        std::unordered_map<Tuple, int, TupleHash> seen;
        for (const Tuple &t : relations[r]) {
            if (static_cast<int>(t.size()) != sig[r].arity)
                throw Error("arity mismatch in relation " + sig[r].name);
            for (Element e : t) {
                if (e >= names.size())
                    throw Error("element id out of range in relation " + sig[r].name);
                covered[e] = 1;
            }
            if (!seen.emplace(t, 0).second)
                throw Error("duplicate tuple in relation " + sig[r].name);
        }
    }
    if (pad_universe) {
        string pad = "Pad";
        while (sig.find(pad))
            pad += "_";
        vector<Symbol> syms = sig.symbols();
        syms.push_back({pad, 1});
        sig = Signature(std::move(syms));
        vector<Tuple> all;
        for (size_t e = 0; e < names.size(); ++e)
            all.push_back({static_cast<Element>(e)});
        relations.push_back(std::move(all));
    } else {
        for (size_t e = 0; e < names.size(); ++e)
            if (!covered[e])
                throw Error("element " + names[e] + " occurs in no tuple");
    }
    A.sig_ = std::move(sig);
    A.names_ = std::move(names);
    A.rels_ = std::move(relations);
    A.occ_.assign(A.names_.size(), {});
    A.ref_to_tup_.resize(A.rels_.size());
    for (size_t r = 0; r < A.rels_.size(); ++r) {
        A.ref_to_tup_[r].resize(A.rels_[r].size());
        for (size_t i = 0; i < A.rels_[r].size(); ++i) {
            const Tuple &t = A.rels_[r][i];
            auto [it, fresh] = A.tup_index_.emplace(t, static_cast<std::uint32_t>(A.tup_.size()));
            if (fresh) {
                A.tup_.push_back({t, {}, {static_cast<SymbolId>(r), static_cast<std::uint32_t>(i)}});
                Tuple distinct = t;
                std::sort(distinct.begin(), distinct.end());
                distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                for (Element e : distinct)
                    A.occ_[e].push_back(it->second);
            }
            A.tup_[it->second].atp.push_back(static_cast<SymbolId>(r));
            A.ref_to_tup_[r][i] = it->second;
        }
    }
    return A;
}

std::optional<Element> Structure::find_element(const string &name) const
{
    auto it = name_index_.find(name);
    if (it == name_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> Structure::tup_index(std::span<const Element> t) const
{
    auto it = tup_index_.find(Tuple(t.begin(), t.end()));
    if (it == tup_index_.end())
        return std::nullopt;
    return it->second;
}

bool Structure::holds(SymbolId r, std::span<const Element> t) const
{
    if (static_cast<int>(t.size()) != sig_.arity(r))
        return false;
    auto idx = tup_index(t);
    if (!idx)
        return false;
    const AtomicType &a = tup_[*idx].atp;
    return std::binary_search(a.begin(), a.end(), r);
}

AtomicType Structure::atp(std::span<const Element> t) const
{
    auto idx = tup_index(t);
    if (!idx)
        return {};
    return tup_[*idx].atp;
}

string Structure::tuple_str(std::span<const Element> t) const
{
    string s = "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ",";
        s += names_[t[i]];
    }
    return s + ")";
}

Metrics metrics(const Structure &A)
{
    size_t cohesion = 0;
    vector<std::uint32_t> mark(A.tup().size(), UINT32_MAX);
    for (std::uint32_t a = 0; a < A.tup().size(); ++a) {
        for (Element e : A.tup()[a].vec)
            for (std::uint32_t b : A.occurrences(e))
                if (b != a && mark[b] != a) {
                    mark[b] = a;
                    ++cohesion;
                }
    }
    return {A.tup().size(), cohesion};
}

vector<std::pair<Element, Element>> gaifman(const Structure &A)
{
    std::set<std::pair<Element, Element>> edges;
    for (const TupEntry &t : A.tup())
        for (Element x : t.vec)
            for (Element y : t.vec)
                if (x < y)
                    edges.emplace(x, y);
    return {edges.begin(), edges.end()};
}

bool strictly_equal_size(const Structure &A, const Structure &B)
{
    if (!(A.signature() == B.signature()))
        return false;
    for (size_t r = 0; r < A.signature().size(); ++r)
        if (A.relation(r).size() != B.relation(r).size())
            return false;
    return true;
}

Union disjoint_union(const Structure &A, const Structure &B)
{
    if (!(A.signature() == B.signature()))
        throw Error("signature mismatch");
    Union u;
    Element offset = static_cast<Element>(A.universe_size());
    vector<string> names;
    for (Element e = 0; e < A.universe_size(); ++e) {
        names.push_back("A." + A.name(e));
        u.element_side.push_back(0);
        u.element_origin.push_back(e);
    }
    for (Element e = 0; e < B.universe_size(); ++e) {
        names.push_back("B." + B.name(e));
        u.element_side.push_back(1);
        u.element_origin.push_back(e);
    }
    vector<vector<Tuple>> rels(A.signature().size());
    for (size_t r = 0; r < rels.size(); ++r) {
        rels[r] = A.relation(r);
        for (Tuple t : B.relation(r)) {
            for (Element &e : t)
                e += offset;
            rels[r].push_back(std::move(t));
        }
    }
    u.joint = Structure::build(A.signature(), std::move(names), std::move(rels));
    for (const TupEntry &t : u.joint.tup())
        u.tup_side.push_back(u.element_side[t.vec[0]]);
    return u;
}

Structure project(const Union &u, int side)
{
    const Structure &J = u.joint;
    vector<Element> remap(J.universe_size(), UINT32_MAX);
    vector<string> names;
    for (Element e = 0; e < J.universe_size(); ++e)
        if (u.element_side[e] == side) {
            remap[e] = static_cast<Element>(names.size());
            names.push_back(J.name(e).substr(2));
        }
    vector<vector<Tuple>> rels(J.signature().size());
    for (size_t r = 0; r < rels.size(); ++r)
        for (const Tuple &t : J.relation(r)) {
            if (u.element_side[t[0]] != side)
                continue;
            Tuple m;
            for (Element e : t)
                m.push_back(remap[e]);
            rels[r].push_back(std::move(m));
        }
    return Structure::build(J.signature(), std::move(names), std::move(rels));
}

Structure permute(const Structure &A, const vector<Element> &perm)
{
    vector<string> names(A.universe_size());
    for (Element e = 0; e < A.universe_size(); ++e)
        names[perm[e]] = A.name(e);
    vector<vector<Tuple>> rels = A.relations();
    for (auto &rel : rels)
        for (Tuple &t : rel)
            for (Element &e : t)
                e = perm[e];
    return Structure::build(A.signature(), std::move(names), std::move(rels));
}

} // namespace rcr
