#include "rcr/rcr.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rcr {

using std::size_t;
using std::string;
using std::vector;

ColorId ColorInterner::intern(string encoding, ColorInfo info)
{
    auto [it, fresh] = ids_.emplace(std::move(encoding), static_cast<ColorId>(infos_.size()));
    if (fresh)
        infos_.push_back(std::move(info));
    return it->second;
}

string ColorInterner::describe(ColorId c) const
{
    const ColorInfo &ci = infos_[c];
    std::ostringstream out;
    if (!ci.previous) {
        out << "({";
        for (size_t i = 0; i < ci.atp.size(); ++i)
            out << (i ? "," : "") << ci.atp[i];
        out << "}, " << ci.self.str() << ")";
    } else {
        out << "(c" << *ci.previous << ", {";
        for (size_t i = 0; i < ci.neighbors.size(); ++i)
            out << (i ? ", " : "") << "(" << ci.neighbors[i].first.str() << ", c" << ci.neighbors[i].second << ")";
        out << "})";
    }
    return out.str();
}

size_t RefinementTrace::class_count(size_t i) const
{
    vector<ColorId> c = at(i);
    std::sort(c.begin(), c.end());
    return static_cast<size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

vector<std::pair<ColorId, size_t>> RefinementTrace::histogram(size_t i) const
{
    std::map<ColorId, size_t> h;
    for (ColorId c : at(i))
        ++h[c];
    return {h.begin(), h.end()};
}

namespace {

void put32(string &s, std::uint32_t x)
{
    for (int b = 0; b < 4; ++b)
        s.push_back(static_cast<char>(x >> (8 * b)));
}

} // namespace

RefinementTrace rcr_run(const Structure &A, std::optional<size_t> max_rounds)
{
    RefinementTrace tr;
    const auto &tup = A.tup();
    size_t n = tup.size();
    size_t cap = max_rounds.value_or(n);

    // overlapping neighbors with their similarity types, computed once
    vector<vector<std::pair<std::uint32_t, SimilarityType>>> nbr(n);
    vector<std::uint32_t> mark(n, UINT32_MAX);
    for (std::uint32_t a = 0; a < n; ++a)
        for (Element e : tup[a].vec)
            for (std::uint32_t b : A.occurrences(e))
                if (mark[b] != a) {
                    mark[b] = a;
                    nbr[a].emplace_back(b, stp(tup[a].vec, tup[b].vec));
                }

    vector<ColorId> cur(n);
    for (size_t a = 0; a < n; ++a) {
        string enc = "A";
        put32(enc, static_cast<std::uint32_t>(tup[a].atp.size()));
        for (SymbolId r : tup[a].atp)
            put32(enc, r);
        SimilarityType self = stp(tup[a].vec);
        self.encode(enc);
        cur[a] = tr.interner.intern(std::move(enc),
                                    ColorInfo{0, static_cast<int>(tup[a].vec.size()), tup[a].atp, self, {}, {}});
    }
    tr.colors.push_back(cur);
    size_t classes = tr.class_count(0);
    for (size_t round = 1; round <= cap; ++round) {
        vector<ColorId> next(n);
        for (size_t a = 0; a < n; ++a) {
            vector<std::pair<SimilarityType, ColorId>> ms;
            ms.reserve(nbr[a].size());
            for (const auto &[b, t] : nbr[a])
                ms.emplace_back(t, cur[b]);
            std::sort(ms.begin(), ms.end());
            string enc = "N";
            put32(enc, cur[a]);
            put32(enc, static_cast<std::uint32_t>(ms.size()));
            for (const auto &[t, c] : ms) {
                t.encode(enc);
                put32(enc, c);
            }
            const ColorInfo &prev = tr.interner.info(cur[a]);
            ColorInfo info{round, prev.arity, prev.atp, prev.self, cur[a], std::move(ms)};
            next[a] = tr.interner.intern(std::move(enc), std::move(info));
        }
        tr.colors.push_back(next);
        size_t now = tr.class_count(round);
        if (now == classes) {
            // the confirming round adds nothing; keep rounds 0..i_A
            tr.colors.pop_back();
            tr.stable = true;
            tr.stable_round = round - 1;
            return tr;
        }
        classes = now;
        cur = std::move(next);
    }
    tr.stable_round = tr.colors.size() - 1;
    tr.stable = n == 0;
    return tr;
}

JointRun rcr_joint(const Structure &A, const Structure &B)
{
    JointRun jr{disjoint_union(A, B), {}, std::nullopt};
    jr.trace = rcr_run(jr.u.joint);
    const auto &side = jr.u.tup_side;
    for (size_t i = 0; i < jr.trace.rounds(); ++i) {
        std::map<ColorId, std::pair<size_t, size_t>> h;
        const auto &c = jr.trace.colors[i];
        for (size_t a = 0; a < c.size(); ++a)
            (side[a] == 0 ? h[c[a]].first : h[c[a]].second)++;
        for (auto &[color, cnt] : h)
            if (cnt.first != cnt.second) {
                jr.verdict = Verdict{i, color, cnt.first, cnt.second};
                return jr;
            }
    }
    return jr;
}

std::optional<Verdict> rcr_distinguishes(const Structure &A, const Structure &B)
{
    return rcr_joint(A, B).verdict;
}

vector<std::uint32_t> canonical_partition(const vector<std::uint32_t> &colors)
{
    std::unordered_map<std::uint32_t, std::uint32_t> first;
    vector<std::uint32_t> out(colors.size());
    for (size_t i = 0; i < colors.size(); ++i)
        out[i] = first.emplace(colors[i], static_cast<std::uint32_t>(first.size())).first->second;
    return out;
}

string trace_csv(const Structure &A, const RefinementTrace &t)
{
    std::ostringstream out;
    out << "round,relation,tuple_index,color_id\n";
    for (size_t i = 0; i < t.rounds(); ++i)
        for (SymbolId r = 0; r < A.signature().size(); ++r)
            for (std::uint32_t k = 0; k < A.relation(r).size(); ++k)
                out << i << "," << A.signature()[r].name << "," << k << ","
                    << t.colors[i][A.tup_index(TupleRef{r, k})] << "\n";
    return out.str();
}

string interner_log(const Structure &A, const RefinementTrace &t)
{
    std::ostringstream out;
    for (ColorId c = 0; c < t.interner.size(); ++c) {
        const ColorInfo &ci = t.interner.info(c);
        out << "c" << c << " round " << ci.round << " = ";
        if (!ci.previous) {
            out << "({";
            for (size_t i = 0; i < ci.atp.size(); ++i)
                out << (i ? "," : "") << A.signature()[ci.atp[i]].name;
            out << "}, " << ci.self.str() << ")";
        } else {
            out << t.interner.describe(c);
        }
        out << "\n";
    }
    return out.str();
}

} // namespace rcr
