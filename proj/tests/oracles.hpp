#pragma once
// Small independent reference implementations used only by tests.

#include "rcr/core.hpp"
#include "rcr/multigraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using rcr::NodeId;

// Block id by first occurrence, so partitions compare with ==.
inline std::vector<std::uint32_t> blocks(const std::vector<std::uint32_t> &c)
{
    std::map<std::uint32_t, std::uint32_t> m;
    std::vector<std::uint32_t> out;
    for (auto x : c)
        out.push_back(m.try_emplace(x, static_cast<std::uint32_t>(m.size())).first->second);
    return out;
}

// Textbook CR on a colored multigraph, straight from the definition. Returns the partition after
// every round until the class count stops growing (last entry repeats the stable one).
inline std::vector<std::vector<std::uint32_t>> cr(const rcr::ColoredMultigraph &g)
{
    std::size_t n = g.node_count();
    std::map<std::pair<NodeId, NodeId>, std::vector<rcr::LabelId>> lab;
    for (const auto &a : g.arcs())
        lab[{a.from, a.to}] = g.label_set(a.labels);
    std::vector<std::set<NodeId>> nb(n);
    for (const auto &a : g.arcs())
        if (a.from != a.to) {
            nb[a.from].insert(a.to);
            nb[a.to].insert(a.from);
        }
    auto get = [&](NodeId u, NodeId v) {
        auto it = lab.find({u, v});
        return it == lab.end() ? std::vector<rcr::LabelId>{} : it->second;
    };
    using Key = std::vector<std::vector<rcr::LabelId>>;
    std::map<Key, std::uint32_t> ids;
    std::vector<std::uint32_t> col(n);
    for (NodeId v = 0; v < n; ++v) {
        Key k{g.node_labels(v), get(v, v)};
        col[v] = ids.try_emplace(k, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    std::vector<std::vector<std::uint32_t>> out{blocks(col)};
    for (;;) {
        std::map<std::pair<std::uint32_t, std::vector<std::vector<std::uint32_t>>>, std::uint32_t> next_ids;
        std::vector<std::uint32_t> nc(n);
        for (NodeId v = 0; v < n; ++v) {
            std::vector<std::vector<std::uint32_t>> ms;
            for (NodeId w : nb[v]) {
                std::vector<std::uint32_t> e;
                for (auto l : get(v, w))
                    e.push_back(l);
                e.push_back(UINT32_MAX);
                for (auto l : get(w, v))
                    e.push_back(l);
                e.push_back(UINT32_MAX);
                e.push_back(col[w]);
                ms.push_back(e);
            }
            std::sort(ms.begin(), ms.end());
            nc[v] = next_ids.try_emplace({col[v], ms}, static_cast<std::uint32_t>(next_ids.size())).first->second;
        }
        auto b = blocks(nc);
        if (std::set<std::uint32_t>(b.begin(), b.end()).size() == std::set<std::uint32_t>(col.begin(), col.end()).size())
            return out;
        col = nc;
        out.push_back(b);
    }
}

// Textbook CR on a simple graph; stable partition.
inline std::vector<std::uint32_t> graph_cr(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges)
{
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<std::uint32_t> col(n, 0);
    std::size_t classes = 1;
    for (;;) {
        std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::uint32_t> ids;
        std::vector<std::uint32_t> nc(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::uint32_t> ms;
            for (auto w : adj[v])
                ms.push_back(col[w]);
            std::sort(ms.begin(), ms.end());
            nc[v] = ids.try_emplace({col[v], ms}, static_cast<std::uint32_t>(ids.size())).first->second;
        }
        col = nc;
        if (ids.size() == classes)
            return blocks(col);
        classes = ids.size();
    }
}

// All duplicate-free non-empty vectors over set(a), by brute force over index sequences.
inline std::set<rcr::Tuple> slices(const rcr::Tuple &a)
{
    std::set<rcr::Element> s(a.begin(), a.end());
    std::vector<rcr::Element> el(s.begin(), s.end());
    std::set<rcr::Tuple> out;
    rcr::Tuple cur;
    auto rec = [&](auto &&self) -> void {
        if (!cur.empty())
            out.insert(cur);
        for (auto e : el)
            if (std::find(cur.begin(), cur.end(), e) == cur.end()) {
                cur.push_back(e);
                self(self);
                cur.pop_back();
            }
    };
    rec(rec);
    return out;
}

// Ordered pairs of distinct Tup members sharing an element.
inline std::size_t cohesion(const rcr::Structure &A)
{
    std::size_t c = 0;
    const auto &t = A.tup();
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (i == j)
                continue;
            bool meet = false;
            for (auto x : t[i].vec)
                for (auto y : t[j].vec)
                    meet |= x == y;
            c += meet;
        }
    return c;
}

} // namespace oracle
