#include "rcr/game.hpp"

#include <algorithm>
#include <climits>

namespace rcr {

using std::size_t;
using std::string;
using std::uint32_t;
using std::vector;

namespace {

// Every fact of X inside set(x), carried over to Y positionally, must have the same atp there.
bool facts_transfer(const Structure &X, std::span<const Element> x, const Structure &Y, std::span<const Element> y)
{
    vector<uint32_t> seen;
    Tuple img;
    for (Element e : x)
        for (uint32_t t : X.occurrences(e)) {
            if (std::find(seen.begin(), seen.end(), t) != seen.end())
                continue;
            seen.push_back(t);
            const TupEntry &te = X.tup()[t];
            img.clear();
            bool inside = true;
            for (Element u : te.vec) {
                auto it = std::find(x.begin(), x.end(), u);
                if (it == x.end()) {
                    inside = false;
                    break;
                }
                img.push_back(y[it - x.begin()]);
            }
            if (inside && Y.atp(img) != te.atp)
                return false;
        }
    return true;
}

string show(const Structure &S, std::span<const Element> t) { return S.tuple_str(t); }

} // namespace

bool is_distinguishing(const Structure &A, std::span<const Element> a, const Structure &B, std::span<const Element> b)
{
    if (a.size() != b.size())
        return true;
    if (a.empty())
        return false;
    if (stp(a) != stp(b))
        return true;
    return !facts_transfer(A, a, B, b) || !facts_transfer(B, b, A, a);
}

size_t default_round_bound(const Structure &A, const Structure &B)
{
    return A.tup().size() + B.tup().size() + 2;
}

GuardedGame::GuardedGame(const Structure &A, const Structure &B, GameOptions opt) : A_(A), B_(B), opt_(opt)
{
    if (!(A.signature() == B.signature()))
        throw Error("signature mismatch");
    for (SymbolId r = 0; r < A.signature().size(); ++r) {
        size_t big = std::max(A.relation(r).size(), B.relation(r).size());
        if (big > opt_.max_relation_size)
            throw Error("game: relation " + A.signature()[r].name + " has " + std::to_string(big) +
                        " tuples, above the guard of " + std::to_string(opt_.max_relation_size));
    }
}

namespace {

struct Matching {
    const vector<vector<char>> &ok;
    size_t n;
    vector<int> match_r, match_l;
    vector<char> vis;

    bool augment(size_t l)
    {
        for (size_t r = 0; r < n; ++r)
            if (ok[l][r] && !vis[r]) {
                vis[r] = 1;
                if (match_r[r] < 0 || augment(static_cast<size_t>(match_r[r]))) {
                    match_r[r] = static_cast<int>(l);
                    match_l[l] = static_cast<int>(r);
                    return true;
                }
            }
        return false;
    }

    // Empty if a perfect matching exists, else a left set X with |N(X)| < |X|.
    vector<uint32_t> hall_violation()
    {
        match_r.assign(n, -1);
        match_l.assign(n, -1);
        for (size_t l = 0; l < n; ++l) {
            vis.assign(n, 0);
            if (augment(l))
                continue;
            // left vertices reachable by alternating paths from l
            vector<uint32_t> X{static_cast<uint32_t>(l)};
            vector<char> inx(n, 0), seen_r(n, 0);
            inx[l] = 1;
            for (size_t h = 0; h < X.size(); ++h)
                for (size_t r = 0; r < n; ++r)
                    if (ok[X[h]][r] && !seen_r[r]) {
                        seen_r[r] = 1;
                        int m = match_r[r];
                        if (m >= 0 && !inx[m]) {
                            inx[m] = 1;
                            X.push_back(static_cast<uint32_t>(m));
                        }
                    }
            std::sort(X.begin(), X.end());
            return X;
        }
        return {};
    }
};

} // namespace

std::optional<std::pair<SymbolId, vector<uint32_t>>> GuardedGame::spoiler_move(const Tuple &a, const Tuple &b,
                                                                               size_t rounds)
{
    for (SymbolId r = 0; r < A_.signature().size(); ++r) {
        const auto &RA = A_.relation(r), &RB = B_.relation(r);
        if (RA.size() != RB.size()) {
            vector<uint32_t> all;
            for (uint32_t i = 0; i < RA.size(); ++i)
                all.push_back(i);
            return std::make_pair(r, all);
        }
        size_t n = RA.size();
        vector<vector<char>> ok(n, vector<char>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (stp(a, RA[i]) != stp(b, RB[j]))
                    continue;
                ok[i][j] = survives(RA[i], RB[j], rounds - 1);
            }
        Matching m{ok, n, {}, {}, {}};
        vector<uint32_t> X = m.hall_violation();
        if (!X.empty())
            return std::make_pair(r, X);
    }
    return std::nullopt;
}

bool GuardedGame::survives(const Tuple &a, const Tuple &b, size_t rounds)
{
    if (is_distinguishing(A_, a, B_, b))
        return false;
    if (rounds == 0)
        return true;
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
        if (static_cast<long>(rounds) <= it->second.first)
            return true;
        if (static_cast<long>(rounds) >= it->second.second)
            return false;
    }
    bool ok = !spoiler_move(a, b, rounds);
    auto &entry = memo_.try_emplace(key, std::make_pair(-1L, LONG_MAX)).first->second;
    if (ok)
        entry.first = std::max(entry.first, static_cast<long>(rounds));
    else
        entry.second = std::min(entry.second, static_cast<long>(rounds));
    return ok;
}

bool GuardedGame::spoiler_wins(size_t rounds, const Configuration &cfg)
{
    if (cfg.a.size() != cfg.b.size())
        throw Error("configuration arities differ");
    return !survives(cfg.a, cfg.b, rounds);
}

void GuardedGame::explain(const Tuple &a, const Tuple &b, size_t rounds, int depth, vector<string> &out)
{
    string indent(2 * depth, ' ');
    if (is_distinguishing(A_, a, B_, b)) {
        out.push_back(indent + "configuration " + show(A_, a) + " / " + show(B_, b) + " is distinguishing");
        return;
    }
    auto mv = spoiler_move(a, b, rounds);
    if (!mv)
        return;
    auto [r, X] = *mv;
    const auto &RA = A_.relation(r), &RB = B_.relation(r);
    const string &name = A_.signature()[r].name;
    if (RA.size() != RB.size()) {
        out.push_back(indent + "pick " + name + ": |" + name + "^A| = " + std::to_string(RA.size()) + " but |" +
                      name + "^B| = " + std::to_string(RB.size()) + ", no bijection");
        return;
    }
    string xs;
    for (uint32_t i : X)
        xs += (xs.empty() ? "" : " ") + show(A_, RA[i]);
    out.push_back(indent + "pick " + name + "; every bijection sends one of {" + xs +
                  "} to a losing image; Spoiler picks that tuple");
    // follow one losing pair with matching similarity types, if any
    for (uint32_t i : X)
        for (const Tuple &bb : RB) {
            if (stp(a, RA[i]) != stp(b, bb)) {
                continue;
            }
            if (!survives(RA[i], bb, rounds - 1)) {
                out.push_back(indent + "e.g. " + show(A_, RA[i]) + " -> " + show(B_, bb) + ":");
                explain(RA[i], bb, rounds - 1, depth + 1, out);
                return;
            }
        }
    out.push_back(indent + "every image outside the allowed set breaks the similarity type with the pinned tuple");
}

GameResult GuardedGame::solve(size_t rounds, const Configuration &cfg)
{
    GameResult res{spoiler_wins(rounds, cfg), {}};
    if (res.spoiler_wins)
        explain(cfg.a, cfg.b, rounds, 0, res.trace);
    return res;
}

} // namespace rcr
