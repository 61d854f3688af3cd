#pragma once

#include "rcr/core.hpp"
#include "rcr/multigraph.hpp"

#include <optional>

namespace rcr {

class JoinTree;

// Registers U_R for every R and E_{i,j} (named "ij") for all i,j <= ar(sig), in that order.
void init_sigma_star(ColoredMultigraph &g, const Signature &sig);
inline LabelId edge_label(const Signature &sig, int i, int j) { return static_cast<LabelId>(i * sig.max_arity() + j); }

// Node a is the Tup member a.
ColoredMultigraph grep(const Structure &A);

using Slice = Tuple;

// All non-empty duplicate-free vectors over set(a), ordered by arity then lexicographically.
std::vector<Slice> slices(std::span<const Element> a);
std::size_t slice_count_bound(int k);
// Tup members whose entry set contains set(s).
std::vector<std::uint32_t> slice_inverse(std::span<const Element> s, const Structure &A);
bool is_slice_of(std::span<const Element> s, std::span<const Element> a);

// For stp(a) = stp(b): the slice s of a mapped to the unique slice s' of b with stp(a,s) = stp(b,s').
Slice map_slice(std::span<const Element> a, std::span<const Element> b, std::span<const Element> s);
// The whole bijection S(a) -> S(b) as pairs in S(a) order; none if stp(a) != stp(b).
std::optional<std::vector<std::pair<Slice, Slice>>> slice_bijection(std::span<const Element> a,
                                                                   std::span<const Element> b);

struct SliceGraph {
    ColoredMultigraph graph;
    std::size_t w_count = 0;       // nodes [0, w_count) are w_a, in Tup order
    std::vector<Slice> slices;     // node w_count + i is v_{slices[i]}
};
SliceGraph vgrep(const Structure &A, bool node_names = true);

ColoredMultigraph incidence(const Structure &A);
ColoredMultigraph enriched_gaifman(const Structure &A);
ColoredMultigraph enriched_incidence(const Structure &A);

// Node c is the Tup member c of C; edges follow J, loops encode stp(c).
ColoredMultigraph jtrep(const Structure &C, const JoinTree &J);

} // namespace rcr
