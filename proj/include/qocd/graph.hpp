#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qocd {

/// Opaque user identifier. Ordering is lexicographic byte order.
using UserId = std::string;
using NodeIndex = std::uint32_t;

/// Directed edge followee -> follower, expressed as node indices.
struct Edge {
    NodeIndex source;
    NodeIndex target;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Follower graph. Nodes are kept sorted by id so that a node's index is its
/// lexicographic rank; edges are sorted by (source, target) and duplicate-free.
class StructuralGraph {
public:
    StructuralGraph() = default;

    /// Throws DataError on a self-loop or an endpoint missing from `nodes`.
    /// Duplicate nodes and duplicate edges collapse.
    StructuralGraph(std::vector<UserId> nodes,
                    const std::vector<std::pair<UserId, UserId>>& edges);

    /// Node set is the set of edge endpoints.
    static StructuralGraph from_edges(const std::vector<std::pair<UserId, UserId>>& edges);

    std::span<const UserId> nodes() const { return nodes_; }
    std::span<const Edge> edges() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    const UserId& id(NodeIndex i) const { return nodes_[i]; }
    std::optional<NodeIndex> find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id).has_value(); }

    /// Edges leaving `i`, as a contiguous slice of edges().
    std::span<const Edge> out_edges(NodeIndex i) const;
    /// Position of edge (s, t) in edges(), if present.
    std::optional<std::size_t> edge_index(NodeIndex s, NodeIndex t) const;

    /// Subgraph induced on the nodes with keep[i] == true.
    StructuralGraph induced(const std::vector<bool>& keep) const;

    friend bool operator==(const StructuralGraph&, const StructuralGraph&) = default;

private:
    void build_offsets();

    std::vector<UserId> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_offsets_;
};

} // namespace qocd
