#pragma once

#include "rcr/core.hpp"

#include <cstdint>
#include <vector>

namespace rcr {

// Random structure over {U/1, E/2, T/3} with n tuples on about n/2 elements.
Structure bench_structure(std::size_t n, std::uint64_t seed);

struct BenchRow {
    std::size_t n;
    std::size_t nodes, arcs;
    double seconds; // best of the repeats, vgrep plus cr_run
};

BenchRow bench_once(const Structure &A, int repeats);

// 1000, 2000, 4000, ... up to max, with max itself appended when it is not on the ladder.
std::vector<std::size_t> bench_ladder(std::size_t lo, std::size_t hi);

} // namespace rcr
