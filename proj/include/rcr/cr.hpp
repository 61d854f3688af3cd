#pragma once

#include "rcr/multigraph.hpp"

#include <optional>

namespace rcr {

struct CrOptions {
    std::optional<std::size_t> max_rounds;
    bool trace = false;      // keep the class of every node after every round
    // side[v] in {0,1}; when set, per-round histograms of the two sides are compared
    const std::vector<std::uint8_t> *side = nullptr;
};

struct NodeColoring {
    std::vector<std::uint32_t> colors;               // after the last round
    std::vector<std::vector<std::uint32_t>> rounds;  // only with trace
    std::vector<std::size_t> class_counts;           // per round
    std::size_t stable_round = 0;
    bool stable = false;
    std::optional<std::size_t> first_imbalance;      // only with side

    // Colors after round i; rounds past stability repeat the stable coloring.
    const std::vector<std::uint32_t> &at(std::size_t i) const { return rounds[std::min(i, rounds.size() - 1)]; }
};

NodeColoring cr_run(const ColoredMultigraph &g, const CrOptions &opt = {});

// Smallest round at which the color histograms of g and h differ.
std::optional<std::size_t> cr_distinguishes(const ColoredMultigraph &g, const ColoredMultigraph &h);

} // namespace rcr
