#pragma once

#include "rcr/core.hpp"

#include <optional>
#include <string>

namespace rcr {

using ColorId = std::uint32_t;

// Decoded nested color: round 0 carries (atp, stp), later rounds (previous, neighbor multiset).
struct ColorInfo {
    std::size_t round;
    int arity;
    AtomicType atp;
    SimilarityType self;
    std::optional<ColorId> previous;
    std::vector<std::pair<SimilarityType, ColorId>> neighbors; // sorted, with repetition
};

class ColorInterner {
public:
    ColorId intern(std::string encoding, ColorInfo info);
    const ColorInfo &info(ColorId c) const { return infos_[c]; }
    std::size_t size() const { return infos_.size(); }
    std::string describe(ColorId c) const;

private:
    std::unordered_map<std::string, ColorId> ids_;
    std::vector<ColorInfo> infos_;
};

struct RefinementTrace {
    // colors[i][a]: color of Tup member a after round i
    std::vector<std::vector<ColorId>> colors;
    std::size_t stable_round = 0;
    bool stable = false;
    ColorInterner interner;

    std::size_t rounds() const { return colors.size(); }
    const std::vector<ColorId> &at(std::size_t i) const { return colors[std::min(i, colors.size() - 1)]; }
    std::size_t class_count(std::size_t i) const;
    std::vector<std::pair<ColorId, std::size_t>> histogram(std::size_t i) const;
};

// Colors Tup(A) round by round until the class count stops growing; max_rounds defaults to |Tup|.
RefinementTrace rcr_run(const Structure &A, std::optional<std::size_t> max_rounds = std::nullopt);

struct Verdict {
    std::size_t round;
    ColorId color;
    std::size_t count_a, count_b;
};

struct JointRun {
    Union u;
    RefinementTrace trace;
    std::optional<Verdict> verdict;
};

JointRun rcr_joint(const Structure &A, const Structure &B);
std::optional<Verdict> rcr_distinguishes(const Structure &A, const Structure &B);

// Canonical partition: block id of each item by first occurrence.
std::vector<std::uint32_t> canonical_partition(const std::vector<std::uint32_t> &colors);

// One row per (round, relation, tuple_index).
std::string trace_csv(const Structure &A, const RefinementTrace &t);
std::string interner_log(const Structure &A, const RefinementTrace &t);

} // namespace rcr
