#include "rcr/multigraph.hpp"

#include <algorithm>
#include <sstream>

namespace rcr {

using std::string;
using std::vector;

LabelId LabelRegistry::intern(const string &name)
{
    auto [it, fresh] = index_.emplace(name, static_cast<LabelId>(names_.size()));
    if (fresh)
        names_.push_back(name);
    return it->second;
}

std::optional<LabelId> LabelRegistry::find(const string &name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

NodeId ColoredMultigraph::add_node(string name)
{
    NodeId v = static_cast<NodeId>(node_labels_.size());
    node_labels_.emplace_back();
    if (!name.empty()) {
        names_.resize(node_labels_.size());
        names_[v] = std::move(name);
    }
    return v;
}

void ColoredMultigraph::add_nodes(std::size_t n)
{
    node_labels_.resize(node_labels_.size() + n);
}

void ColoredMultigraph::add_unary(NodeId v, LabelId l)
{
    auto &ls = node_labels_[v];
    auto it = std::lower_bound(ls.begin(), ls.end(), l);
    if (it == ls.end() || *it != l)
        ls.insert(it, l);
}

std::uint32_t ColoredMultigraph::intern_label_set(const vector<LabelId> &labels)
{
    auto [it, fresh] = set_index_.emplace(labels, static_cast<std::uint32_t>(sets_.size()));
    if (fresh)
        sets_.push_back(labels);
    return it->second;
}

void ColoredMultigraph::add_edge(NodeId u, NodeId v, LabelId l)
{
    add_arc(u, v, intern_label_set({l}));
}

void ColoredMultigraph::add_arc(NodeId u, NodeId v, const vector<LabelId> &labels)
{
    if (labels.empty())
        return;
    add_arc(u, v, intern_label_set(labels));
}

void ColoredMultigraph::finalize()
{
    if (!dirty_)
        return;
    std::sort(arcs_.begin(), arcs_.end(),
              [](const Arc &a, const Arc &b) { return a.from != b.from ? a.from < b.from : a.to < b.to; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < arcs_.size();) {
        std::size_t j = i + 1;
        Arc merged = arcs_[i];
        if (j < arcs_.size() && arcs_[j].from == merged.from && arcs_[j].to == merged.to) {
            vector<LabelId> all = sets_[merged.labels];
            for (; j < arcs_.size() && arcs_[j].from == merged.from && arcs_[j].to == merged.to; ++j)
                all.insert(all.end(), sets_[arcs_[j].labels].begin(), sets_[arcs_[j].labels].end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            merged.labels = intern_label_set(all);
        }
        arcs_[out++] = merged;
        i = j;
    }
    arcs_.resize(out);
    dirty_ = false;
}

string ColoredMultigraph::node_name(NodeId v) const
{
    if (v < names_.size() && !names_[v].empty())
        return names_[v];
    return "n" + std::to_string(v);
}

vector<std::pair<NodeId, NodeId>> ColoredMultigraph::edges(LabelId l) const
{
    vector<std::pair<NodeId, NodeId>> out;
    for (const Arc &a : arcs_) {
        const auto &s = sets_[a.labels];
        if (std::binary_search(s.begin(), s.end(), l))
            out.emplace_back(a.from, a.to);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ColoredMultigraph::has_edge(NodeId u, NodeId v, LabelId l) const
{
    for (const Arc &a : arcs_)
        if (a.from == u && a.to == v) {
            const auto &s = sets_[a.labels];
            if (std::binary_search(s.begin(), s.end(), l))
                return true;
        }
    return false;
}

std::size_t ColoredMultigraph::edge_count() const
{
    std::size_t n = 0;
    for (const Arc &a : arcs_)
        n += sets_[a.labels].size();
    return n;
}

ColoredMultigraph disjoint_union(const ColoredMultigraph &g, const ColoredMultigraph &h)
{
    if (!(g.unary == h.unary) || !(g.edge == h.edge))
        throw Error("label namespace mismatch");
    ColoredMultigraph u;
    u.unary = g.unary;
    u.edge = g.edge;
    NodeId off = static_cast<NodeId>(g.node_count());
    for (const ColoredMultigraph *x : {&g, &h}) {
        NodeId base = x == &g ? 0 : off;
        for (NodeId v = 0; v < x->node_count(); ++v) {
            NodeId w = u.add_node(x->node_name(v));
            for (LabelId l : x->node_labels(v))
                u.add_unary(w, l);
        }
        for (const Arc &a : x->arcs())
            u.add_arc(base + a.from, base + a.to, x->label_set(a.labels));
    }
    u.finalize();
    return u;
}

vector<vector<NodeId>> gaifman(const ColoredMultigraph &g)
{
    vector<vector<NodeId>> adj(g.node_count());
    for (const Arc &a : g.arcs())
        if (a.from != a.to) {
            adj[a.from].push_back(a.to);
            adj[a.to].push_back(a.from);
        }
    for (auto &l : adj) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return adj;
}

namespace {

string dot_escape(const string &s)
{
    string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

string to_dot(const ColoredMultigraph &g, const string &graph_name)
{
    static const char *shapes[] = {"box", "ellipse", "diamond", "hexagon", "triangle", "octagon", "house", "trapezium"};
    std::ostringstream out;
    out << "digraph \"" << dot_escape(graph_name) << "\" {\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto &ls = g.node_labels(v);
        string label = dot_escape(g.node_name(v));
        string shape = "circle";
        if (!ls.empty()) {
            shape = shapes[ls.front() % (sizeof shapes / sizeof *shapes)];
            label += "\\n";
            for (std::size_t i = 0; i < ls.size(); ++i)
                label += (i ? "," : "") + dot_escape(g.unary.name(ls[i]));
        }
        out << "  n" << v << " [label=\"" << label << "\", shape=" << shape << "];\n";
    }
    for (const Arc &a : g.arcs()) {
        const auto &ls = g.label_set(a.labels);
        string label;
        for (std::size_t i = 0; i < ls.size(); ++i)
            label += (i ? ", " : "") + g.edge.name(ls[i]);
        out << "  n" << a.from << " -> n" << a.to << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace rcr
