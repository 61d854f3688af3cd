#pragma once

#include "rcr/core.hpp"

#include <map>
#include <optional>
#include <string>

namespace rcr {

struct Configuration {
    Tuple a, b;
};

bool is_distinguishing(const Structure &A, std::span<const Element> a, const Structure &B, std::span<const Element> b);

struct GameOptions {
    std::size_t max_relation_size = 6;
};

struct GameResult {
    bool spoiler_wins;
    std::vector<std::string> trace; // one line per move along a sample play
};

class GuardedGame {
public:
    GuardedGame(const Structure &A, const Structure &B, GameOptions opt = {});

    // True iff Spoiler has a winning strategy for `rounds` rounds from cfg.
    bool spoiler_wins(std::size_t rounds, const Configuration &cfg = {});
    GameResult solve(std::size_t rounds, const Configuration &cfg = {});

private:
    const Structure &A_, &B_;
    GameOptions opt_;
    // per (a, b): largest survived and smallest lost round budget
    std::map<std::pair<Tuple, Tuple>, std::pair<long, long>> memo_;

    bool survives(const Tuple &a, const Tuple &b, std::size_t rounds);
    // Spoiler's move from a non-distinguishing config: relation and a Hall-violating set of R^A indices.
    std::optional<std::pair<SymbolId, std::vector<std::uint32_t>>> spoiler_move(const Tuple &a, const Tuple &b,
                                                                                std::size_t rounds);
    void explain(const Tuple &a, const Tuple &b, std::size_t rounds, int depth, std::vector<std::string> &out);
};

// r* = |Tup(A)| + |Tup(B)| + 2
std::size_t default_round_bound(const Structure &A, const Structure &B);

} // namespace rcr
