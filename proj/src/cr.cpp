#include "rcr/cr.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace rcr {

using std::size_t;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace {

constexpr uint32_t NONE = UINT32_MAX;

struct Adjacency {
    vector<size_t> begin;     // CSR offsets, size n+1
    vector<uint32_t> nbr;
    vector<uint32_t> lam;     // lambda(nbr, owner): the label seen from the neighbor's side
};

// lambda(v,w) is the pair (labels of arc v->w, labels of arc w->v), interned.
Adjacency build_adjacency(const ColoredMultigraph &g)
{
    size_t n = g.node_count();
    Adjacency adj;
    adj.begin.assign(n + 1, 0);
    for (const Arc &a : g.arcs())
        if (a.from != a.to) {
            ++adj.begin[a.from + 1];
            ++adj.begin[a.to + 1];
        }
    for (size_t v = 0; v < n; ++v)
        adj.begin[v + 1] += adj.begin[v];
    size_t m = adj.begin[n];
    // raw entries: neighbor and (set id, direction bit)
    vector<uint32_t> rn(m), rs(m);
    vector<size_t> fill(adj.begin.begin(), adj.begin.end() - 1);
    for (const Arc &a : g.arcs())
        if (a.from != a.to) {
            size_t p = fill[a.from]++;
            rn[p] = a.to;
            rs[p] = a.labels << 1;          // outgoing from owner
            size_t q = fill[a.to]++;
            rn[q] = a.from;
            rs[q] = (a.labels << 1) | 1;    // incoming to owner
        }
    std::unordered_map<uint64_t, uint32_t> lam_ids;
    auto lam_id = [&](uint32_t out, uint32_t in) {
        uint64_t key = (uint64_t(out) << 32) | in;
        return lam_ids.emplace(key, static_cast<uint32_t>(lam_ids.size())).first->second;
    };
    adj.nbr.reserve(m);
    adj.lam.reserve(m);
    vector<size_t> nb(n + 1, 0);
    vector<std::pair<uint32_t, uint32_t>> tmp;
    for (size_t v = 0; v < n; ++v) {
        nb[v] = adj.nbr.size();
        tmp.clear();
        for (size_t p = adj.begin[v]; p < adj.begin[v + 1]; ++p)
            tmp.emplace_back(rn[p], rs[p]);
        std::sort(tmp.begin(), tmp.end());
        for (size_t i = 0; i < tmp.size();) {
            uint32_t w = tmp[i].first, out = NONE, in = NONE;
            for (; i < tmp.size() && tmp[i].first == w; ++i) {
                if (tmp[i].second & 1)
                    in = tmp[i].second >> 1;
                else
                    out = tmp[i].second >> 1;
            }
            // stored from w's point of view: lambda(w, v) = (arc w->v, arc v->w)
            adj.nbr.push_back(w);
            adj.lam.push_back(lam_id(in, out));
        }
    }
    nb[n] = adj.nbr.size();
    adj.begin = std::move(nb);
    return adj;
}

void radix_sort(vector<uint64_t> &keys, vector<uint64_t> &buf, int bits)
{
    if (keys.size() < 65536) {
        std::sort(keys.begin(), keys.end());
        return;
    }
    buf.resize(keys.size());
    vector<size_t> count(1 << 16);
    for (int shift = 0; shift < bits; shift += 16) {
        std::fill(count.begin(), count.end(), 0);
        for (uint64_t k : keys)
            ++count[(k >> shift) & 0xffff];
        size_t sum = 0;
        for (size_t &c : count) {
            size_t t = c;
            c = sum;
            sum += t;
        }
        for (uint64_t k : keys)
            buf[count[(k >> shift) & 0xffff]++] = k;
        keys.swap(buf);
    }
}

struct Triple {
    uint32_t v, lam, cls;
    bool operator<(const Triple &o) const
    {
        if (v != o.v)
            return v < o.v;
        if (lam != o.lam)
            return lam < o.lam;
        return cls < o.cls;
    }
};

class Refiner {
public:
    Refiner(const ColoredMultigraph &g, const CrOptions &opt) : g_(g), opt_(opt), n_(g.node_count()) {}

    NodeColoring run()
    {
        NodeColoring out;
        initial();
        adj_ = build_adjacency(g_);
        int lam_bits = 1;
        uint32_t max_lam = 0;
        for (uint32_t l : adj_.lam)
            max_lam = std::max(max_lam, l);
        while ((uint64_t(1) << lam_bits) <= max_lam)
            ++lam_bits;
        int node_bits = 1;
        while ((uint64_t(1) << node_bits) <= n_)
            ++node_bits;
        packed_ = 2 * node_bits + lam_bits <= 64;
        node_bits_ = node_bits;
        lam_bits_ = lam_bits;

        record(out, 0);
        size_t cap = opt_.max_rounds.value_or(SIZE_MAX);
        vector<uint32_t> fresh(n_);
        for (uint32_t v = 0; v < n_; ++v)
            fresh[v] = v;
        for (size_t round = 1; round <= cap; ++round) {
            if (fresh.empty() || !refine(fresh)) {
                out.stable = true;
                out.stable_round = round - 1;
                out.colors = cls_;
                return out;
            }
            record(out, round);
        }
        out.stable_round = out.class_counts.size() - 1;
        out.colors = cls_;
        return out;
    }

private:
    const ColoredMultigraph &g_;
    const CrOptions &opt_;
    size_t n_;
    Adjacency adj_;
    vector<uint32_t> cls_, elems_, pos_;
    vector<size_t> cbegin_, cend_;
    vector<std::array<size_t, 2>> side_count_;
    size_t imbalanced_ = 0;
    bool packed_ = true;
    int node_bits_ = 1, lam_bits_ = 1;

    void initial()
    {
        std::map<vector<LabelId>, uint32_t> key_ids;
        vector<uint32_t> loops(n_, NONE);
        for (const Arc &a : g_.arcs())
            if (a.from == a.to)
                loops[a.from] = a.labels;
        cls_.resize(n_);
        for (uint32_t v = 0; v < n_; ++v) {
            // loop sets are keyed by content so ids agree across graphs sharing a namespace
            vector<LabelId> key = g_.node_labels(v);
            key.push_back(NONE);
            if (loops[v] != NONE)
                for (LabelId l : g_.label_set(loops[v]))
                    key.push_back(l);
            auto it = key_ids.emplace(std::move(key), static_cast<uint32_t>(key_ids.size())).first;
            cls_[v] = it->second;
        }
        // class ids ordered by key so they do not depend on node order
        vector<uint32_t> rank(key_ids.size());
        uint32_t r = 0;
        for (auto &[k, id] : key_ids)
            rank[id] = r++;
        for (uint32_t &c : cls_)
            c = rank[c];
        size_t k = key_ids.size();
        cbegin_.assign(k, 0);
        cend_.assign(k, 0);
        for (uint32_t c : cls_)
            ++cend_[c];
        size_t sum = 0;
        for (size_t c = 0; c < k; ++c) {
            cbegin_[c] = sum;
            sum += cend_[c];
            cend_[c] = cbegin_[c];
        }
        elems_.resize(n_);
        pos_.resize(n_);
        for (uint32_t v = 0; v < n_; ++v) {
            pos_[v] = static_cast<uint32_t>(cend_[cls_[v]]);
            elems_[cend_[cls_[v]]++] = v;
        }
        if (opt_.side) {
            side_count_.assign(k, {0, 0});
            for (uint32_t v = 0; v < n_; ++v)
                ++side_count_[cls_[v]][(*opt_.side)[v]];
            for (auto &sc : side_count_)
                imbalanced_ += sc[0] != sc[1];
        }
    }

    void record(NodeColoring &out, size_t round)
    {
        out.class_counts.push_back(cbegin_.size());
        if (opt_.trace)
            out.rounds.push_back(cls_);
        if (opt_.side && imbalanced_ && !out.first_imbalance)
            out.first_imbalance = round;
    }

    // One round. fresh: nodes whose class was created last round. Returns false if nothing split.
    bool refine(vector<uint32_t> &fresh)
    {
        // signature entries for every node adjacent to a fresh node
        vector<uint32_t> tv, tl, tc;
        if (packed_) {
            vector<uint64_t> keys, buf;
            for (uint32_t x : fresh)
                for (size_t p = adj_.begin[x]; p < adj_.begin[x + 1]; ++p)
                    keys.push_back((uint64_t(adj_.nbr[p]) << (lam_bits_ + node_bits_)) |
                                   (uint64_t(adj_.lam[p]) << node_bits_) | cls_[x]);
            radix_sort(keys, buf, 2 * node_bits_ + lam_bits_);
            uint64_t cm = (uint64_t(1) << node_bits_) - 1, lm = (uint64_t(1) << lam_bits_) - 1;
            tv.reserve(keys.size());
            for (uint64_t k : keys) {
                tv.push_back(static_cast<uint32_t>(k >> (lam_bits_ + node_bits_)));
                tl.push_back(static_cast<uint32_t>((k >> node_bits_) & lm));
                tc.push_back(static_cast<uint32_t>(k & cm));
            }
        } else {
            vector<Triple> t;
            for (uint32_t x : fresh)
                for (size_t p = adj_.begin[x]; p < adj_.begin[x + 1]; ++p)
                    t.push_back({adj_.nbr[p], adj_.lam[p], cls_[x]});
            std::sort(t.begin(), t.end());
            for (const Triple &e : t) {
                tv.push_back(e.v);
                tl.push_back(e.lam);
                tc.push_back(e.cls);
            }
        }

        // per touched node: signature as (lam, cls, count) runs in a flat buffer
        vector<uint32_t> touched;
        vector<size_t> sig_off;
        vector<uint32_t> sig;
        for (size_t i = 0; i < tv.size();) {
            uint32_t v = tv[i];
            touched.push_back(v);
            sig_off.push_back(sig.size());
            while (i < tv.size() && tv[i] == v) {
                size_t j = i;
                while (j < tv.size() && tv[j] == v && tl[j] == tl[i] && tc[j] == tc[i])
                    ++j;
                sig.push_back(tl[i]);
                sig.push_back(tc[i]);
                sig.push_back(static_cast<uint32_t>(j - i));
                i = j;
            }
        }
        sig_off.push_back(sig.size());

        struct KeyHash {
            const vector<uint32_t> *sig;
            const vector<size_t> *off;
            const vector<uint32_t> *cls;
            const vector<uint32_t> *touched;
            size_t operator()(uint32_t t) const
            {
                uint64_t h = (*cls)[(*touched)[t]] * 0x9e3779b97f4a7c15ULL;
                for (size_t p = (*off)[t]; p < (*off)[t + 1]; ++p)
                    h = (h ^ (*sig)[p]) * 0xff51afd7ed558ccdULL + (h >> 31);
                return static_cast<size_t>(h);
            }
        };
        struct KeyEq {
            const vector<uint32_t> *sig;
            const vector<size_t> *off;
            const vector<uint32_t> *cls;
            const vector<uint32_t> *touched;
            bool operator()(uint32_t a, uint32_t b) const
            {
                if ((*cls)[(*touched)[a]] != (*cls)[(*touched)[b]])
                    return false;
                size_t la = (*off)[a + 1] - (*off)[a], lb = (*off)[b + 1] - (*off)[b];
                return la == lb && std::equal(sig->begin() + (*off)[a], sig->begin() + (*off)[a + 1],
                                              sig->begin() + (*off)[b]);
            }
        };
        std::unordered_map<uint32_t, uint32_t, KeyHash, KeyEq> groups(
            touched.size() * 2 + 1, KeyHash{&sig, &sig_off, &cls_, &touched}, KeyEq{&sig, &sig_off, &cls_, &touched});
        vector<uint32_t> group_of(touched.size());
        vector<uint32_t> group_class, group_size;
        for (uint32_t t = 0; t < touched.size(); ++t) {
            auto [it, isnew] = groups.emplace(t, static_cast<uint32_t>(group_class.size()));
            if (isnew) {
                group_class.push_back(cls_[touched[t]]);
                group_size.push_back(0);
            }
            group_of[t] = it->second;
            ++group_size[it->second];
        }

        // groups per class, in first-appearance order
        std::unordered_map<uint32_t, vector<uint32_t>> by_class;
        vector<uint32_t> class_order;
        for (uint32_t gi = 0; gi < group_class.size(); ++gi) {
            auto [it, isnew] = by_class.try_emplace(group_class[gi]);
            if (isnew)
                class_order.push_back(group_class[gi]);
            it->second.push_back(gi);
        }
        vector<vector<uint32_t>> members(group_class.size());
        for (uint32_t t = 0; t < touched.size(); ++t)
            members[group_of[t]].push_back(touched[t]);

        fresh.clear();
        bool split = false;
        for (uint32_t c : class_order) {
            const vector<uint32_t> &gs = by_class[c];
            size_t csize = cend_[c] - cbegin_[c];
            size_t touched_total = 0;
            for (uint32_t gi : gs)
                touched_total += group_size[gi];
            size_t untouched = csize - touched_total;
            size_t pieces = gs.size() + (untouched > 0);
            if (pieces == 1)
                continue;
            split = true;
            // move touched nodes to the tail of the class range, group by group
            size_t tail = cend_[c];
            vector<std::pair<size_t, size_t>> ranges; // per group
            for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
                size_t hi = tail;
                for (uint32_t v : members[*it]) {
                    --tail;
                    uint32_t u = elems_[tail];
                    std::swap(elems_[tail], elems_[pos_[v]]);
                    std::swap(pos_[u], pos_[v]);
                }
                ranges.emplace_back(tail, hi);
            }
            std::reverse(ranges.begin(), ranges.end());
            // pieces: untouched [cbegin, tail) then one range per group
            vector<std::pair<size_t, size_t>> piece;
            if (untouched)
                piece.emplace_back(cbegin_[c], tail);
            piece.insert(piece.end(), ranges.begin(), ranges.end());
            size_t keep = 0;
            for (size_t p = 1; p < piece.size(); ++p)
                if (piece[p].second - piece[p].first > piece[keep].second - piece[keep].first)
                    keep = p;
            std::array<size_t, 2> old_counts{};
            if (opt_.side) {
                old_counts = side_count_[c];
                imbalanced_ -= old_counts[0] != old_counts[1];
            }
            std::array<size_t, 2> moved{0, 0};
            for (size_t p = 0; p < piece.size(); ++p) {
                if (p == keep) {
                    cbegin_[c] = piece[p].first;
                    cend_[c] = piece[p].second;
                    continue;
                }
                uint32_t nc = static_cast<uint32_t>(cbegin_.size());
                cbegin_.push_back(piece[p].first);
                cend_.push_back(piece[p].second);
                std::array<size_t, 2> sc{0, 0};
                for (size_t q = piece[p].first; q < piece[p].second; ++q) {
                    uint32_t v = elems_[q];
                    cls_[v] = nc;
                    fresh.push_back(v);
                    if (opt_.side)
                        ++sc[(*opt_.side)[v]];
                }
                if (opt_.side) {
                    side_count_.push_back(sc);
                    imbalanced_ += sc[0] != sc[1];
                    moved[0] += sc[0];
                    moved[1] += sc[1];
                }
            }
            if (opt_.side) {
                side_count_[c] = {old_counts[0] - moved[0], old_counts[1] - moved[1]};
                imbalanced_ += side_count_[c][0] != side_count_[c][1];
            }
        }
        return split;
    }
};

} // namespace

NodeColoring cr_run(const ColoredMultigraph &g, const CrOptions &opt)
{
    if (!g.finalized())
        throw Error("cr_run: multigraph not finalized");
    Refiner r(g, opt);
    return r.run();
}

std::optional<size_t> cr_distinguishes(const ColoredMultigraph &g, const ColoredMultigraph &h)
{
    ColoredMultigraph u = disjoint_union(g, h);
    vector<std::uint8_t> side(u.node_count(), 0);
    for (size_t v = g.node_count(); v < u.node_count(); ++v)
        side[v] = 1;
    CrOptions opt;
    opt.side = &side;
    return cr_run(u, opt).first_imbalance;
}

} // namespace rcr
