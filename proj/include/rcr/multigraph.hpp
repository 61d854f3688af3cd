#pragma once

#include "rcr/core.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace rcr {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

class LabelRegistry {
public:
    LabelId intern(const std::string &name);
    std::optional<LabelId> find(const std::string &name) const;
    const std::string &name(LabelId l) const { return names_[l]; }
    std::size_t size() const { return names_.size(); }
    bool operator==(const LabelRegistry &o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, LabelId> index_;
};

// An arc carries the set of edge labels E_l with (from, to) in E_l, as an interned set id.
struct Arc {
    NodeId from, to;
    std::uint32_t labels;
};

class ColoredMultigraph {
public:
    LabelRegistry unary;
    LabelRegistry edge;

    NodeId add_node(std::string name = {});
    void add_nodes(std::size_t n);
    void add_unary(NodeId v, LabelId l);
    void add_edge(NodeId u, NodeId v, LabelId l);
    // labels must be sorted and duplicate-free.
    void add_arc(NodeId u, NodeId v, const std::vector<LabelId> &labels);
    void add_arc(NodeId u, NodeId v, std::uint32_t label_set) { arcs_.push_back({u, v, label_set}); dirty_ = true; }
    std::uint32_t intern_label_set(const std::vector<LabelId> &labels);
    // Sorts arcs by (from, to) and merges parallel arcs.
    void finalize();

    std::size_t node_count() const { return node_labels_.size(); }
    const std::vector<LabelId> &node_labels(NodeId v) const { return node_labels_[v]; }
    std::string node_name(NodeId v) const;
    const std::vector<Arc> &arcs() const { return arcs_; }
    const std::vector<LabelId> &label_set(std::uint32_t id) const { return sets_[id]; }
    std::size_t label_set_count() const { return sets_.size(); }

    std::vector<std::pair<NodeId, NodeId>> edges(LabelId l) const;
    bool has_edge(NodeId u, NodeId v, LabelId l) const;
    // Number of (u, v, label) triples.
    std::size_t edge_count() const;
    bool finalized() const { return !dirty_; }

private:
    std::vector<std::vector<LabelId>> node_labels_;
    std::vector<std::string> names_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<LabelId>> sets_;
    std::unordered_map<std::vector<LabelId>, std::uint32_t, TupleHash> set_index_;
    bool dirty_ = false;
};

// Both graphs must share the label namespaces. Nodes of h follow those of g.
ColoredMultigraph disjoint_union(const ColoredMultigraph &g, const ColoredMultigraph &h);

// Undirected simple graph underlying the arcs (loops dropped); adjacency lists sorted.
std::vector<std::vector<NodeId>> gaifman(const ColoredMultigraph &g);

std::string to_dot(const ColoredMultigraph &g, const std::string &graph_name = "G");

} // namespace rcr
