#pragma once

#include "rcr/core.hpp"

#include <cstdint>

namespace rcr {

// Counter-based generator: output n of stream s is mix(seed, s, n).
// split() derives an independent stream, so results do not depend on call interleaving.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
    Rng split() { return Rng(next(), 0x5851f42d4c957f2dULL); }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    // Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) { return lo + static_cast<std::int64_t>(below(hi - lo + 1)); }
    bool coin(double p = 0.5) { return (next() >> 11) * 0x1.0p-53 < p; }

    template <class T>
    void shuffle(std::vector<T> &v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

struct RandomStructureParams {
    std::size_t elements = 6;
    std::size_t tuples = 6;        // total, split over relations
    std::size_t max_per_relation = SIZE_MAX;
    double repeat_bias = 0.0;      // chance that a position copies an earlier entry
};

// Random structure over sig; elements that end up uncovered are dropped.
Structure random_structure(const Signature &sig, const RandomStructureParams &p, Rng &rng);

Signature random_signature(Rng &rng, int max_arity, int max_symbols);

// Same multiset of relation sizes as A, tuples rewired at random.
Structure random_same_size(const Structure &A, std::size_t elements, Rng &rng);

// Copy of A under a random element permutation.
Structure random_isomorphic_copy(const Structure &A, Rng &rng);

Structure graph_structure(std::size_t n, const std::vector<std::pair<Element, Element>> &edges);

} // namespace rcr
