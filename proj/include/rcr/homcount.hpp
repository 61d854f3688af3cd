#pragma once

#include "rcr/acyclic.hpp"
#include "rcr/core.hpp"
#include "rcr/multigraph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace rcr {

using Count = boost::multiprecision::cpp_int;

class TooLarge : public Error {
public:
    using Error::Error;
};

// Guard: |V(C)| * log2 |V(A)| <= max_bits.
Count hom_bruteforce(const Structure &C, const Structure &A, double max_bits = 40.0);
Count hom_acyclic(const Structure &C, const JoinTree &J, const Structure &A);
// T must have a forest as Gaifman graph; both graphs share label namespaces.
Count hom_multigraph(const ColoredMultigraph &T, const ColoredMultigraph &G);

} // namespace rcr
