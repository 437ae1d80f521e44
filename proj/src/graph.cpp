#include "qocd/graph.hpp"

#include "qocd/error.hpp"

#include <algorithm>

namespace qocd {

StructuralGraph::StructuralGraph(std::vector<UserId> nodes,
                                 const std::vector<std::pair<UserId, UserId>>& edges)
    : nodes_(std::move(nodes))
{
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());

    edges_.reserve(edges.size());
    for (const auto& [from, to] : edges) {
        if (from == to) {
            throw DataError("self-loop on node '" + from + "'");
        }
        auto s = find(from);
        auto t = find(to);
        if (!s) throw DataError("edge endpoint '" + from + "' is not a node");
        if (!t) throw DataError("edge endpoint '" + to + "' is not a node");
        edges_.push_back({*s, *t});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    build_offsets();
}

StructuralGraph StructuralGraph::from_edges(const std::vector<std::pair<UserId, UserId>>& edges)
{
    std::vector<UserId> nodes;
    nodes.reserve(edges.size() * 2);
    for (const auto& [from, to] : edges) {
        nodes.push_back(from);
        nodes.push_back(to);
    }
    return StructuralGraph(std::move(nodes), edges);
}

void StructuralGraph::build_offsets()
{
    out_offsets_.assign(nodes_.size() + 1, 0);
    for (const Edge& e : edges_) {
        ++out_offsets_[e.source + 1];
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
    }
}

std::optional<NodeIndex> StructuralGraph::find(std::string_view id) const
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const UserId& a, std::string_view b) { return a < b; });
    if (it == nodes_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<NodeIndex>(it - nodes_.begin());
}

std::span<const Edge> StructuralGraph::out_edges(NodeIndex i) const
{
    if (nodes_.empty()) return {};
    return std::span<const Edge>(edges_).subspan(out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]);
}

std::optional<std::size_t> StructuralGraph::edge_index(NodeIndex s, NodeIndex t) const
{
    const Edge key{s, t};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - edges_.begin());
}

StructuralGraph StructuralGraph::induced(const std::vector<bool>& keep) const
{
    StructuralGraph out;
    std::vector<NodeIndex> remap(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (keep[i]) {
            remap[i] = static_cast<NodeIndex>(out.nodes_.size());
            out.nodes_.push_back(nodes_[i]);
        }
    }
    // Order is preserved by the monotone remap, so edges stay sorted.
    for (const Edge& e : edges_) {
        if (keep[e.source] && keep[e.target]) {
            out.edges_.push_back({remap[e.source], remap[e.target]});
        }
    }
    out.build_offsets();
    return out;
}

} // namespace qocd
