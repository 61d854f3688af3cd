#pragma once

#include "rcr/core.hpp"
#include "rcr/multigraph.hpp"
#include "rcr/random.hpp"

#include <optional>

namespace rcr {

// Undirected tree on the Tup members of a structure.
class JoinTree {
public:
    JoinTree() = default;
    // Throws Error unless the edges form a spanning tree on n nodes.
    JoinTree(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    std::size_t size() const { return adj_.size(); }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> &edges() const { return edges_; }
    const std::vector<std::uint32_t> &neighbors(std::uint32_t v) const { return adj_[v]; }

    // parent[root] = UINT32_MAX; order lists nodes parents-first.
    void orient(std::uint32_t root, std::vector<std::uint32_t> &parent, std::vector<std::uint32_t> &order) const;

private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::vector<std::vector<std::uint32_t>> adj_;
};

std::optional<JoinTree> gyo_join_tree(const Structure &C);

struct JoinTreeCheck {
    bool ok;
    std::optional<Element> violating;
};
JoinTreeCheck validate_join_tree(const Structure &C, const JoinTree &J);

// `edge: (rel,idx) -- (rel,idx)` lines; idx is 0-based within the relation.
JoinTree parse_join_tree(const std::string &text, const Structure &C);
std::string serialize_join_tree(const JoinTree &J, const Structure &C);
std::string join_tree_dot(const JoinTree &J, const Structure &C);

struct Print {
    struct Node {
        AtomicType rho;        // non-empty, single arity
        SimilarityType tau;    // self type, arity k x k
        std::uint32_t parent = UINT32_MAX;
        SimilarityType up;     // stp(t_parent, t_node), arity k_parent x k
    };
    std::vector<Node> nodes;   // node 0 is the root, parents precede children
};

class InconsistentPrint : public Error {
public:
    using Error::Error;
};

struct PrintStructure {
    Structure C;
    JoinTree J;   // over Tup(C); print node v becomes Tup member tup_of[v]
    std::vector<std::uint32_t> tup_of;
};

PrintStructure structure_from_print(const Signature &sig, const Print &P);

// Reads the print off jtrep(C, J) rooted at root.
Print extract_print(const ColoredMultigraph &jt, const Signature &sig, const JoinTree &J, std::uint32_t root = 0);

struct AcyclicSample {
    Structure C;
    JoinTree J;
};
AcyclicSample random_acyclic(const Signature &sig, std::size_t node_count, Rng &rng);
AcyclicSample random_acyclic(const Signature &sig, std::size_t node_count, std::uint64_t seed);

} // namespace rcr
