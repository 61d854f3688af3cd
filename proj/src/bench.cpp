#include "rcr/bench.hpp"

#include "rcr/cr.hpp"
#include "rcr/random.hpp"
#include "rcr/representations.hpp"

#include <chrono>

namespace rcr {

Structure bench_structure(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed, n);
    Signature sig({{"U", 1}, {"E", 2}, {"T", 3}});
    RandomStructureParams p;
    p.elements = std::max<std::size_t>(n / 2, 2);
    p.tuples = n;
    p.repeat_bias = 0.1;
    return random_structure(sig, p, rng);
}

BenchRow bench_once(const Structure &A, int repeats)
{
    BenchRow row{A.tup().size(), 0, 0, 1e300};
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        SliceGraph sg = vgrep(A, false);
        NodeColoring nc = cr_run(sg.graph);
        auto t1 = std::chrono::steady_clock::now();
        row.seconds = std::min(row.seconds, std::chrono::duration<double>(t1 - t0).count());
        row.nodes = sg.graph.node_count();
        row.arcs = sg.graph.arcs().size();
        (void)nc;
    }
    return row;
}

std::vector<std::size_t> bench_ladder(std::size_t lo, std::size_t hi)
{
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; n *= 2)
        out.push_back(n);
    if (out.empty() || out.back() != hi)
        out.push_back(hi);
    return out;
}

} // namespace rcr
